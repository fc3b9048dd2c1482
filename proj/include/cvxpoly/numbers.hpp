#pragma once

#include <gmpxx.h>

namespace cvx {

using BigInt = mpz_class;
using Rational = mpq_class;

} // namespace cvx
