#pragma once

#include "latsec/cvp.hpp"
#include "latsec/lattice.hpp"
#include "latsec/smith.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latsec {

/// Coset label: digit vector t with 0 <= t_i < d_i against the Smith diagonal,
/// plus its k-bit packing. Packing is mixed radix, little endian: digits in
/// order, each contributing log2(d_i) bits least-significant first, bit j of
/// the string at index j.
struct CosetLabel {
    std::vector<std::int64_t> digits;
    std::string bits;
};

/// Mixed-radix bit packing for a Smith diagonal whose entries are powers of
/// two (guaranteed when the quotient order is a power of two).
class LabelCoding {
public:
    explicit LabelCoding(std::vector<std::int64_t> diag);

    int bit_count() const { return bit_count_; }
    std::string pack(const std::vector<std::int64_t>& digits) const;
    std::vector<std::int64_t> unpack(const std::string& bits) const;

private:
    std::vector<std::int64_t> diag_;
    std::vector<int> digit_bits_;
    int bit_count_;
};

/// Explicit bit-string -> coset-representative table. Used for the labelings
/// spelled out in worked examples; encode transmits the table representative
/// verbatim and decode inverts through the canonical digit labels.
class LabelTable {
public:
    /// entries must cover all 2^k bit strings with pairwise distinct cosets.
    static LabelTable build(const class QuotientCode& quotient,
                            std::vector<std::pair<std::string, Vector>> entries);

    const Vector& representative(const std::string& bits) const;
    const std::string& bits_for_digits(const std::vector<std::int64_t>& digits) const;

private:
    std::unordered_map<std::string, Vector> rep_by_bits_;
    std::map<std::vector<std::int64_t>, std::string> bits_by_digits_;
};

/// A nested lattice pair (Lambda_b, Lambda_e) with its integer relation
/// M_e = B * M_b in Smith normal form; the coset code Lambda_b / Lambda_e
/// with 2^k cosets. Immutable after construction.
class QuotientCode {
public:
    /// Builds the quotient: recovers B from M_e * M_b^{-1} (rounded, then
    /// verified exactly against M_e within 1e-9), computes its Smith normal
    /// form and checks the index is a power of two. Throws InvalidArgument
    /// when Lambda_e is not a sublattice or the index is not a power of two.
    static QuotientCode build(Lattice lattice_b, Lattice lattice_e);

    const Lattice& lattice_b() const { return lattice_b_; }
    const Lattice& lattice_e() const { return lattice_e_; }
    const IntMatrix& relation() const { return relation_; }
    const SmithDecomposition& snf() const { return snf_; }
    const LabelCoding& coding() const { return coding_; }

    /// |Lambda_b / Lambda_e| = prod d_i = 2^k.
    std::int64_t index() const { return index_; }
    int rate_bits() const { return rate_bits_; }  // k
    /// k / (n/2): information bits per complex (two-real-dimension) symbol.
    double rate_bits_per_complex_symbol() const;

    /// Label of a point of Lambda_b (throws a membership error otherwise):
    /// digits of the point's coordinates in the V-transformed basis, mod d.
    /// Constant on cosets of Lambda_e.
    CosetLabel label_of(const Vector& point) const;
    CosetLabel label_from_bits(const std::string& bits) const;
    CosetLabel label_from_digits(std::vector<std::int64_t> digits) const;

    /// The canonical coset member with digit coordinates themselves
    /// (t * V * M_b); cheap, not minimum energy.
    Vector representative(const CosetLabel& label) const;

    /// Minimum-energy member of the coset: subtracts the Lambda_e point
    /// closest to the canonical representative, then among all equal-norm
    /// members (within 1e-9) picks the one with lexicographically smallest
    /// integer coordinates in the Lambda_b basis.
    Vector min_energy_representative(const CosetLabel& label) const;

    /// The Lambda_e point with integer coordinates z in the D-transformed
    /// basis D * V * M_b (the window encoding draws z from [-L, L)^n).
    Vector lattice_e_point(const IntVector& window_coords) const;

    /// x = r + c: the coset representative for `bits` plus the Lambda_e point
    /// r (validated to lie in Lambda_e). With a label table the table's
    /// representative is used verbatim; otherwise the min-energy one.
    Vector encode(const std::string& bits, const Vector& r) const;

    /// Nearest-point decoding: x_hat = closest_point(Lambda_b, received),
    /// then the coset label of x_hat, packed to bits.
    std::pair<std::string, Vector> decode(const Vector& received) const;

    /// Same quotient with an explicit labeling preset attached.
    QuotientCode with_label_table(std::vector<std::pair<std::string, Vector>> entries) const;
    bool has_label_table() const { return table_.has_value(); }

private:
    QuotientCode() = default;

    Lattice lattice_b_{Matrix::Identity(1, 1)};
    Lattice lattice_e_{Matrix::Identity(1, 1)};
    IntMatrix relation_;
    SmithDecomposition snf_;
    LabelCoding coding_{std::vector<std::int64_t>{}};
    std::int64_t index_ = 1;
    int rate_bits_ = 0;
    std::optional<LabelTable> table_;
};

/// The residue-table labeling of Z^2 / 2Z^2, mapping each bit pair to its
/// mod-2 coordinates: 00 -> (0,0), 01 -> (0,1), 10 -> (1,0), 11 -> (1,1).
std::vector<std::pair<std::string, Vector>> z2_residue_codebook();

/// Validates a bit string (throws InvalidArgument on anything but '0'/'1' or
/// a length mismatch when expected_len >= 0).
void validate_bits(const std::string& bits, int expected_len = -1);

}  // namespace latsec
