#include "latsec/reed_muller.hpp"

#include "latsec/errors.hpp"
#include "latsec/quotient.hpp"

#include <algorithm>
#include <map>

namespace latsec {

namespace {

CodeWord xor_words(const CodeWord& a, const CodeWord& b) {
    CodeWord out;
    for (int i = 0; i < 8; ++i) {
        out[i] = a[i] ^ b[i];
    }
    return out;
}

std::size_t message_index(const std::string& bits) {
    validate_bits(bits, 4);
    std::size_t m = 0;
    for (int i = 0; i < 4; ++i) {
        if (bits[static_cast<std::size_t>(i)] == '1') {
            m |= (std::size_t{1} << i);
        }
    }
    return m;
}

}  // namespace

int hamming_weight(const CodeWord& w) {
    int weight = 0;
    for (int v : w) {
        weight += v;
    }
    return weight;
}

BinaryCode::BinaryCode() {
    generator_ = {{
        {1, 1, 1, 1, 1, 1, 1, 1},
        {0, 1, 0, 1, 0, 1, 0, 1},
        {0, 0, 1, 1, 0, 0, 1, 1},
        {0, 0, 0, 0, 1, 1, 1, 1},
    }};
    for (std::size_t m = 0; m < 16; ++m) {
        CodeWord w{};
        for (int row = 0; row < 4; ++row) {
            if (m & (std::size_t{1} << row)) {
                w = xor_words(w, generator_[static_cast<std::size_t>(row)]);
            }
        }
        codewords_[m] = w;
    }

    // Coset leaders: canonical minimum-weight (then lexicographically least)
    // member of each of the 16 cosets of F_2^8 / C.
    std::map<CodeWord, CodeWord> leader_by_coset_key;
    for (int v = 0; v < 256; ++v) {
        CodeWord w{};
        for (int i = 0; i < 8; ++i) {
            w[static_cast<std::size_t>(i)] = (v >> i) & 1;
        }
        // Coset key: the least member under (weight, lex).
        CodeWord best = w;
        for (const CodeWord& c : codewords_) {
            const CodeWord member = xor_words(w, c);
            const auto wt_m = hamming_weight(member);
            const auto wt_b = hamming_weight(best);
            if (wt_m < wt_b || (wt_m == wt_b && member < best)) {
                best = member;
            }
        }
        leader_by_coset_key.emplace(best, best);
    }
    if (leader_by_coset_key.size() != 16) {
        throw InvalidArgument("Reed-Muller coset computation is inconsistent");
    }
    std::vector<CodeWord> leaders;
    leaders.reserve(16);
    for (const auto& [key, leader] : leader_by_coset_key) {
        leaders.push_back(leader);
    }
    std::sort(leaders.begin(), leaders.end(), [](const CodeWord& a, const CodeWord& b) {
        const int wa = hamming_weight(a);
        const int wb = hamming_weight(b);
        return wa != wb ? wa < wb : a < b;
    });
    std::copy(leaders.begin(), leaders.end(), coset_leaders_.begin());
}

const BinaryCode& BinaryCode::reed_muller_8_4_4() {
    static const BinaryCode code;
    return code;
}

CodeWord BinaryCode::encode(const std::string& message_bits) const {
    return codewords_[message_index(message_bits)];
}

Vector e8_example_encode(const std::string& info_bits,
                         const std::string& random_code_bits,
                         std::span<const std::int64_t> random_z) {
    validate_bits(info_bits, 8);
    validate_bits(random_code_bits, 4);
    if (random_z.size() != 8) {
        throw InvalidArgument("e8 example encoder needs 8 integer randomness coordinates");
    }
    const auto& code = BinaryCode::reed_muller_8_4_4();
    const CodeWord c = code.encode(info_bits.substr(0, 4));
    const CodeWord leader =
        code.coset_leaders()[message_index(info_bits.substr(4, 4))];
    const CodeWord c_random = code.encode(random_code_bits);

    Vector x(8);
    for (int i = 0; i < 8; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        x[i] = static_cast<double>(c[idx]) + 2.0 * static_cast<double>(leader[idx]) +
               2.0 * static_cast<double>(c_random[idx]) +
               4.0 * static_cast<double>(random_z[idx]);
    }
    return x;
}

std::vector<std::pair<std::string, Vector>> e8_example_codebook() {
    const auto& code = BinaryCode::reed_muller_8_4_4();
    std::vector<std::pair<std::string, Vector>> entries;
    entries.reserve(256);
    for (int s = 0; s < 256; ++s) {
        std::string bits(8, '0');
        for (int b = 0; b < 8; ++b) {
            if (s & (1 << b)) {
                bits[static_cast<std::size_t>(b)] = '1';
            }
        }
        const CodeWord c = code.codewords()[static_cast<std::size_t>(s & 0xf)];
        const CodeWord leader =
            code.coset_leaders()[static_cast<std::size_t>((s >> 4) & 0xf)];
        Vector rep(8);
        for (int i = 0; i < 8; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            rep[i] = static_cast<double>(c[idx]) + 2.0 * static_cast<double>(leader[idx]);
        }
        entries.emplace_back(std::move(bits), std::move(rep));
    }
    return entries;
}

}  // namespace latsec
