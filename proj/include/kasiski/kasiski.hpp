#pragma once

#include "kasiski/alphabet.hpp"
#include "kasiski/cipher.hpp"
#include "kasiski/error.hpp"
#include "kasiski/experiment.hpp"
#include "kasiski/repeats.hpp"
#include "kasiski/serialize.hpp"
#include "kasiski/sign_test.hpp"
