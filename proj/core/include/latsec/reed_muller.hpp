#pragma once

#include "latsec/lattice.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace latsec {

using CodeWord = std::array<int, 8>;  // 0/1 entries, index = coordinate

/// The Reed-Muller (8,4,4) code: 16 codewords of length 8, minimum weight 4,
/// together with minimum-weight coset leaders of F_2^8 / C.
class BinaryCode {
public:
    static const BinaryCode& reed_muller_8_4_4();

    const std::array<CodeWord, 4>& generator() const { return generator_; }
    /// All 16 codewords; index m has codeword sum_{i: bit i of m} g_i, so the
    /// 4-bit message is little endian with bit 0 selecting the first row.
    const std::array<CodeWord, 16>& codewords() const { return codewords_; }
    /// One minimum-Hamming-weight representative per coset of F_2^8 / C,
    /// lexicographic tie-break, ordered by (weight, lex). Leader 0 is the
    /// zero word; all leaders have weight <= 2.
    const std::array<CodeWord, 16>& coset_leaders() const { return coset_leaders_; }

    CodeWord encode(const std::string& message_bits /* 4 */) const;

private:
    BinaryCode();
    std::array<CodeWord, 4> generator_;
    std::array<CodeWord, 16> codewords_;
    std::array<CodeWord, 16> coset_leaders_;
};

int hamming_weight(const CodeWord& w);

/// The E8 = 2Z^8 + (8,4,4) example encoder: with c the codeword of the first
/// 4 info bits, l the coset leader indexed by the last 4 info bits (little
/// endian), c' the codeword of the 4 random bits and z the integer vector of
/// the remaining randomness,
///     x = c + 2 l + (2 c' + 4 z).
/// The first two terms select the coset of 2 E8A, the parenthesis is the
/// random point of 2 E8A. Output lies in the Construction-A E8 lattice.
Vector e8_example_encode(const std::string& info_bits /* 8 */,
                         const std::string& random_code_bits /* 4 */,
                         std::span<const std::int64_t> random_z /* 8 */);

/// The 256-entry labeling alphabet E8/2E8 = (8,4,4) + 2*C_leaders: bit string
/// s (8 bits) maps to the representative c(s_0..s_3) + 2 l(s_4..s_7).
std::vector<std::pair<std::string, Vector>> e8_example_codebook();

}  // namespace latsec
