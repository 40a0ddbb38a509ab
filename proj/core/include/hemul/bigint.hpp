// Multi-word unsigned integers in base beta, little-endian limb order.
//
// Limbs are held in uint64_t slots; in 32-bit word mode every limb is below
// 2^32. Only the operations the multiplication pipeline needs are provided
// (schoolbook multiply, shift-subtract division, power-of-two shifts).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hemul/word.hpp"

namespace hemul {

using BigInt = std::vector<uint64_t>;  // little-endian limbs, each < beta

int bigint_cmp(const BigInt& a, const BigInt& b);
bool bigint_is_zero(const BigInt& a);
void bigint_trim(BigInt& a);
int bigint_bit_length(const BigInt& a, WordSize w);

// r = a + b; returns the carry out of the top limb.
uint64_t bigint_add(BigInt& r, const BigInt& a, const BigInt& b, WordSize w);
// r = a - b; requires a >= b.
void bigint_sub(BigInt& r, const BigInt& a, const BigInt& b, WordSize w);
BigInt bigint_mul(const BigInt& a, const BigInt& b, WordSize w);
BigInt bigint_mul_word(const BigInt& a, uint64_t b, WordSize w);
void bigint_add_word(BigInt& a, uint64_t b, WordSize w);

// a mod m (general case: binary shift-subtract; callers with power-of-two
// moduli should mask limbs instead).
BigInt bigint_mod(const BigInt& a, const BigInt& m, WordSize w);
uint64_t bigint_mod_word(const BigInt& a, uint64_t m, WordSize w);
// quotient of a / m where m is a single word; remainder via out param.
BigInt bigint_div_word(const BigInt& a, uint64_t m, uint64_t* rem, WordSize w);

BigInt bigint_shl(const BigInt& a, int bits, WordSize w);
BigInt bigint_shr(const BigInt& a, int bits, WordSize w);

// value of bit i (0 = least significant).
int bigint_bit(const BigInt& a, int i, WordSize w);

BigInt bigint_from_u64(uint64_t v, WordSize w);
BigInt bigint_pow2(int bits, WordSize w);  // 2^bits
uint64_t bigint_to_u64(const BigInt& a, WordSize w);

std::string bigint_to_hex(const BigInt& a, WordSize w);
BigInt bigint_from_hex(const std::string& s, WordSize w);

}  // namespace hemul
