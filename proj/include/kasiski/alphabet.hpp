#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kasiski/error.hpp"

namespace kasiski {

using Letter = std::uint8_t;

// The 26-letter model: A=0, B=1, ..., Z=25.
struct Alphabet {
  static constexpr std::size_t size = 26;

  static constexpr bool is_letter(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
  }

  // Precondition: is_letter(c).
  static constexpr Letter index(char c) noexcept {
    return static_cast<Letter>(c >= 'a' ? c - 'a' : c - 'A');
  }

  static constexpr char letter(Letter i) noexcept { return static_cast<char>('A' + i); }

  static constexpr Letter add(Letter a, Letter b) noexcept {
    return static_cast<Letter>((a + b) % size);
  }

  static constexpr Letter sub(Letter a, Letter b) noexcept {
    return static_cast<Letter>((a + size - b) % size);
  }
};

inline std::string to_text(const std::vector<Letter>& letters) {
  std::string out;
  out.reserve(letters.size());
  for (Letter l : letters) out.push_back(Alphabet::letter(l));
  return out;
}

// Letters-only text with the stripped non-letter characters kept aside so the
// original layout can be restored around transformed letters.
class Message {
 public:
  struct Stripped {
    std::size_t position;  // offset in the original text
    char ch;
    bool operator==(const Stripped&) const = default;
  };

  Message() = default;
  Message(std::vector<Letter> letters, std::vector<Stripped> skeleton, std::size_t original_len)
      : letters_(std::move(letters)), skeleton_(std::move(skeleton)), original_len_(original_len) {}

  // Letters-only message with no skeleton. Precondition: every char is a letter.
  static Message from_letters(std::vector<Letter> letters) {
    const std::size_t n = letters.size();
    return Message(std::move(letters), {}, n);
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  const std::vector<Stripped>& skeleton() const noexcept { return skeleton_; }
  std::size_t original_len() const noexcept { return original_len_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  // Uppercase letters only.
  std::string text() const { return to_text(letters_); }

  // Letters interleaved with the skeleton at their original offsets.
  std::string formatted() const {
    std::string out;
    out.reserve(original_len_);
    auto skel = skeleton_.begin();
    auto let = letters_.begin();
    for (std::size_t pos = 0; pos < original_len_; ++pos) {
      if (skel != skeleton_.end() && skel->position == pos) {
        out.push_back(skel->ch);
        ++skel;
      } else if (let != letters_.end()) {
        out.push_back(Alphabet::letter(*let++));
      }
    }
    return out;
  }

  // Same skeleton, new letters. Precondition: same letter count.
  Message with_letters(std::vector<Letter> letters) const {
    return Message(std::move(letters), skeleton_, original_len_);
  }

  bool operator==(const Message&) const = default;

 private:
  std::vector<Letter> letters_;
  std::vector<Stripped> skeleton_;
  std::size_t original_len_ = 0;
};

// Keeps ASCII letters (uppercased) and records everything else, byte by byte.
inline Message normalize(std::string_view raw) {
  std::vector<Letter> letters;
  std::vector<Message::Stripped> skeleton;
  letters.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (Alphabet::is_letter(c)) {
      letters.push_back(Alphabet::index(c));
    } else {
      skeleton.push_back({i, c});
    }
  }
  if (letters.empty()) throw Error(ErrorCode::EmptyMessage, "input contains no letters");
  return Message(std::move(letters), std::move(skeleton), raw.size());
}

class Key {
 public:
  static constexpr std::size_t max_length = 256;

  // Letters only, case-insensitive; anything else is rejected.
  explicit Key(std::string_view spelling, std::string label = {}) : label_(std::move(label)) {
    if (spelling.empty()) throw Error(ErrorCode::EmptyKey, "key is empty");
    if (spelling.size() > max_length) {
      throw Error(ErrorCode::KeyTooLong,
                  "key has " + std::to_string(spelling.size()) + " characters, maximum is " +
                      std::to_string(max_length));
    }
    letters_.reserve(spelling.size());
    for (char c : spelling) {
      if (!Alphabet::is_letter(c)) {
        throw Error(ErrorCode::InvalidKey, "key may contain letters A-Z only, got '" +
                                               std::string(1, c) + "'");
      }
      letters_.push_back(Alphabet::index(c));
    }
    if (label_.empty()) label_ = text();
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  const std::string& label() const noexcept { return label_; }
  std::string text() const { return to_text(letters_); }

  bool operator==(const Key&) const = default;

 private:
  std::vector<Letter> letters_;
  std::string label_;
};

}  // namespace kasiski
