// Encrypts a sentence both ways and runs the Kasiski examination on each.
#include <iostream>

#include "kasiski/kasiski.hpp"

int main() {
  using namespace kasiski;
  const Message plain = normalize("CRYPTO IS SHORT FOR CRYPTOGRAPHY");
  const Key key("ABCD");

  for (auto strategy : {KeystreamStrategy::PeriodicRepeat, KeystreamStrategy::AutokeyPlaintext}) {
    const Message cipher = encrypt(plain, key, strategy);
    const AttackResult r = attack(cipher);
    std::cout << to_string(strategy) << ": " << cipher.formatted() << '\n'
              << render_attack(r, cipher.size()) << '\n';
  }
}
