#pragma once

#include <string_view>
#include <vector>

#include "kasiski/alphabet.hpp"

namespace kasiski {

// How a short key is stretched to the message length.
enum class KeystreamStrategy {
  PeriodicRepeat,    // key, key, key, ... (standard Vigenere)
  AutokeyPlaintext,  // key followed by the plaintext itself (modified variant)
};

constexpr std::string_view to_string(KeystreamStrategy s) noexcept {
  return s == KeystreamStrategy::PeriodicRepeat ? "periodic" : "autokey";
}

struct Keystream {
  KeystreamStrategy strategy;
  std::vector<Letter> stream;
};

inline Keystream extend_key(const Key& key, const Message& plaintext, KeystreamStrategy strategy) {
  if (plaintext.empty()) throw Error(ErrorCode::EmptyMessage, "plaintext is empty");
  const auto& k = key.letters();
  const auto& p = plaintext.letters();
  std::vector<Letter> stream(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (strategy == KeystreamStrategy::PeriodicRepeat) {
      stream[i] = k[i % k.size()];
    } else {
      stream[i] = i < k.size() ? k[i] : p[i - k.size()];
    }
  }
  return {strategy, std::move(stream)};
}

inline Message encrypt(const Message& plaintext, const Key& key, KeystreamStrategy strategy) {
  const Keystream ks = extend_key(key, plaintext, strategy);
  const auto& p = plaintext.letters();
  std::vector<Letter> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = Alphabet::add(p[i], ks.stream[i]);
  return plaintext.with_letters(std::move(out));
}

// The autokey stream is rebuilt from letters already recovered.
inline Message decrypt(const Message& ciphertext, const Key& key, KeystreamStrategy strategy) {
  if (ciphertext.empty()) throw Error(ErrorCode::EmptyMessage, "ciphertext is empty");
  const auto& k = key.letters();
  const auto& c = ciphertext.letters();
  std::vector<Letter> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Letter shift;
    if (i < k.size()) {
      shift = k[i];
    } else if (strategy == KeystreamStrategy::PeriodicRepeat) {
      shift = k[i % k.size()];
    } else {
      shift = out[i - k.size()];
    }
    out[i] = Alphabet::sub(c[i], shift);
  }
  return ciphertext.with_letters(std::move(out));
}

}  // namespace kasiski
