#include <gtest/gtest.h>

#include <random>

#include "kasiski/alphabet.hpp"

using namespace kasiski;

TEST(Alphabet, IndexLetterBijection) {
  for (char c = 'A'; c <= 'Z'; ++c) {
    EXPECT_EQ(Alphabet::letter(Alphabet::index(c)), c);
    EXPECT_EQ(Alphabet::index(static_cast<char>(c - 'A' + 'a')), Alphabet::index(c));
  }
  EXPECT_EQ(Alphabet::index('A'), 0);
  EXPECT_EQ(Alphabet::index('Z'), 25);
  EXPECT_FALSE(Alphabet::is_letter('1'));
  EXPECT_FALSE(Alphabet::is_letter('['));
  EXPECT_FALSE(Alphabet::is_letter('@'));
}

TEST(Alphabet, ModularArithmetic) {
  EXPECT_EQ(Alphabet::add(Alphabet::index('R'), Alphabet::index('B')), Alphabet::index('S'));
  EXPECT_EQ(Alphabet::sub(Alphabet::index('S'), Alphabet::index('B')), Alphabet::index('R'));
  EXPECT_EQ(Alphabet::add(25, 1), 0);
  EXPECT_EQ(Alphabet::sub(0, 1), 25);
}

TEST(Normalize, StripsSpacesFromWorkedExample) {
  const Message m = normalize("CRYPTO IS SHORT FOR CRYPTOGRAPHY");
  EXPECT_EQ(m.text(), "CRYPTOISSHORTFORCRYPTOGRAPHY");
  EXPECT_EQ(m.size(), 28u);
  ASSERT_EQ(m.skeleton().size(), 4u);
  for (const auto& s : m.skeleton()) EXPECT_EQ(s.ch, ' ');
}

TEST(Normalize, LettersOnlyIsIdentity) {
  const Message m = normalize("ABC");
  EXPECT_EQ(m.letters(), (std::vector<Letter>{0, 1, 2}));
  EXPECT_TRUE(m.skeleton().empty());
}

TEST(Normalize, RecordsNonLettersWithPositions) {
  const Message m = normalize("a1b2c!");
  EXPECT_EQ(m.letters(), (std::vector<Letter>{0, 1, 2}));
  const std::vector<Message::Stripped> expected{{1, '1'}, {3, '2'}, {5, '!'}};
  EXPECT_EQ(m.skeleton(), expected);
  EXPECT_EQ(m.formatted(), "A1B2C!");
}

TEST(Normalize, NoLettersIsEmptyMessage) {
  try {
    normalize("123 !?");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyMessage);
  }
  EXPECT_THROW(normalize(""), Error);
}

TEST(Normalize, SkeletonRestoresLayoutUpToCase) {
  std::mt19937_64 rng(7);
  const std::string pool = "abcXYZ \n\t.,;-'\x80\xc3";
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw(1 + rng() % 60, ' ');
    for (char& c : raw) c = pool[rng() % pool.size()];
    raw.push_back('q');
    const Message m = normalize(raw);
    std::string folded = raw;
    for (char& c : folded) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    ASSERT_EQ(m.formatted(), folded);
    ASSERT_EQ(m.original_len(), raw.size());
  }
}

TEST(KeyValidation, RejectsEmptyNonLetterAndOverlong) {
  auto code_of = [](auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Parse;
  };
  EXPECT_EQ(code_of([] { Key(""); }), ErrorCode::EmptyKey);
  EXPECT_EQ(code_of([] { Key("AB1"); }), ErrorCode::InvalidKey);
  EXPECT_EQ(code_of([] { Key("AB CD"); }), ErrorCode::InvalidKey);
  EXPECT_EQ(code_of([] { Key(std::string(257, 'A')); }), ErrorCode::KeyTooLong);
  EXPECT_NO_THROW(Key(std::string(256, 'z')));
}

TEST(KeyValidation, CaseInsensitiveWithDefaultLabel) {
  const Key k("abcd");
  EXPECT_EQ(k.text(), "ABCD");
  EXPECT_EQ(k.label(), "ABCD");
  EXPECT_EQ(Key("xy", "short1").label(), "short1");
}
