#include "latsec/quotient.hpp"

#include "latsec/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <bit>
#include <cmath>

namespace latsec {

namespace {

constexpr double kTieTol = 1e-9;

// Row-convention product u' = u * M for integer row vectors stored as columns.
IntVector row_apply(const IntVector& u, const IntMatrix& m) {
    return m.transpose() * u;
}

std::int64_t mod_positive(std::int64_t a, std::int64_t d) {
    const std::int64_t r = a % d;
    return r < 0 ? r + d : r;
}

}  // namespace

void validate_bits(const std::string& bits, int expected_len) {
    if (expected_len >= 0 && static_cast<int>(bits.size()) != expected_len) {
        throw InvalidArgument("expected a bit string of length " +
                              std::to_string(expected_len) + ", got \"" + bits + "\"");
    }
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("bit strings may only contain '0' and '1'");
        }
    }
}

LabelCoding::LabelCoding(std::vector<std::int64_t> diag) : diag_(std::move(diag)) {
    bit_count_ = 0;
    digit_bits_.reserve(diag_.size());
    for (std::int64_t d : diag_) {
        if (d < 1 || (d & (d - 1)) != 0) {
            throw InvalidArgument("label coding requires power-of-two digit moduli");
        }
        const int bits = std::countr_zero(static_cast<std::uint64_t>(d));
        digit_bits_.push_back(bits);
        bit_count_ += bits;
    }
}

std::string LabelCoding::pack(const std::vector<std::int64_t>& digits) const {
    if (digits.size() != diag_.size()) {
        throw InvalidArgument("digit vector length mismatch");
    }
    std::string bits;
    bits.reserve(static_cast<std::size_t>(bit_count_));
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= diag_[i]) {
            throw InvalidArgument("digit out of range for its modulus");
        }
        for (int b = 0; b < digit_bits_[i]; ++b) {
            bits.push_back(((digits[i] >> b) & 1) ? '1' : '0');
        }
    }
    return bits;
}

std::vector<std::int64_t> LabelCoding::unpack(const std::string& bits) const {
    validate_bits(bits, bit_count_);
    std::vector<std::int64_t> digits(diag_.size(), 0);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < diag_.size(); ++i) {
        for (int b = 0; b < digit_bits_[i]; ++b) {
            if (bits[pos++] == '1') {
                digits[i] |= (std::int64_t{1} << b);
            }
        }
    }
    return digits;
}

LabelTable LabelTable::build(const QuotientCode& quotient,
                             std::vector<std::pair<std::string, Vector>> entries) {
    const auto expected = static_cast<std::size_t>(quotient.index());
    if (entries.size() != expected) {
        throw InvalidArgument("label table must cover all " + std::to_string(expected) +
                              " cosets");
    }
    LabelTable table;
    for (auto& [bits, rep] : entries) {
        validate_bits(bits, quotient.rate_bits());
        const CosetLabel label = quotient.label_of(rep);
        if (!table.bits_by_digits_.emplace(label.digits, bits).second) {
            throw InvalidArgument("label table has two representatives in one coset");
        }
        if (!table.rep_by_bits_.emplace(bits, std::move(rep)).second) {
            throw InvalidArgument("label table repeats bit string \"" + bits + "\"");
        }
    }
    return table;
}

const Vector& LabelTable::representative(const std::string& bits) const {
    const auto it = rep_by_bits_.find(bits);
    if (it == rep_by_bits_.end()) {
        throw InvalidArgument("bit string \"" + bits + "\" is not in the label table");
    }
    return it->second;
}

const std::string& LabelTable::bits_for_digits(
    const std::vector<std::int64_t>& digits) const {
    const auto it = bits_by_digits_.find(digits);
    if (it == bits_by_digits_.end()) {
        throw InvalidArgument("coset is not covered by the label table");
    }
    return it->second;
}

QuotientCode QuotientCode::build(Lattice lattice_b, Lattice lattice_e) {
    if (!lattice_b.is_full_rank_square() || !lattice_e.is_full_rank_square()) {
        throw InvalidArgument("quotient requires full-rank square generators");
    }
    if (lattice_b.ambient_dim() != lattice_e.ambient_dim()) {
        throw InvalidArgument("lattice pair must share the ambient dimension");
    }
    const int n = lattice_b.ambient_dim();

    // Recover the integer relation B with M_e = B * M_b, then verify exactly.
    const Matrix b_real = lattice_b.generator()
                              .transpose()
                              .partialPivLu()
                              .solve(lattice_e.generator().transpose())
                              .transpose();
    IntMatrix relation(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            relation(i, j) = std::llround(b_real(i, j));
        }
    }
    const double scale =
        std::max(1.0, lattice_e.generator().lpNorm<Eigen::Infinity>());
    const double err = (relation.cast<double>() * lattice_b.generator() -
                        lattice_e.generator())
                           .lpNorm<Eigen::Infinity>();
    if (err > 1e-9 * scale) {
        throw InvalidArgument(
            (lattice_e.name().empty() ? std::string("lattice_e") : lattice_e.name()) +
            " is not a sublattice of " +
            (lattice_b.name().empty() ? std::string("lattice_b") : lattice_b.name()));
    }

    QuotientCode q;
    q.lattice_b_ = std::move(lattice_b);
    q.lattice_e_ = std::move(lattice_e);
    q.relation_ = relation;
    q.snf_ = smith_normal_form(relation);
    q.index_ = q.snf_.index();
    if (q.index_ < 1 || (q.index_ & (q.index_ - 1)) != 0) {
        throw InvalidArgument("coset count " + std::to_string(q.index_) +
                              " is not a power of two; bit labeling needs 2^k cosets");
    }
    q.rate_bits_ = std::countr_zero(static_cast<std::uint64_t>(q.index_));
    q.coding_ = LabelCoding(q.snf_.diag);
    return q;
}

double QuotientCode::rate_bits_per_complex_symbol() const {
    return 2.0 * rate_bits_ / lattice_b_.ambient_dim();
}

CosetLabel QuotientCode::label_of(const Vector& point) const {
    const IntVector u = lattice_b_.coords_from_point(point);
    const IntVector transformed = row_apply(u, snf_.v_inv);
    std::vector<std::int64_t> digits(snf_.diag.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        digits[i] = mod_positive(transformed[static_cast<Eigen::Index>(i)],
                                 snf_.diag[i]);
    }
    CosetLabel label;
    label.bits = coding_.pack(digits);
    label.digits = std::move(digits);
    return label;
}

CosetLabel QuotientCode::label_from_bits(const std::string& bits) const {
    CosetLabel label;
    label.digits = coding_.unpack(bits);
    label.bits = bits;
    return label;
}

CosetLabel QuotientCode::label_from_digits(std::vector<std::int64_t> digits) const {
    CosetLabel label;
    label.bits = coding_.pack(digits);
    label.digits = std::move(digits);
    return label;
}

Vector QuotientCode::representative(const CosetLabel& label) const {
    IntVector t(static_cast<Eigen::Index>(label.digits.size()));
    for (std::size_t i = 0; i < label.digits.size(); ++i) {
        t[static_cast<Eigen::Index>(i)] = label.digits[i];
    }
    const IntVector u = row_apply(t, snf_.v);
    return lattice_b_.point_from_coords(u);
}

Vector QuotientCode::min_energy_representative(const CosetLabel& label) const {
    const Vector c0 = representative(label);
    const LatticePoint nearest = closest_point(lattice_e_, c0);

    // Every coset member at (or tied with) the minimal norm is c0 - p for a
    // Lambda_e point p within the nearest distance (plus tie tolerance) of c0.
    const auto candidates = points_within(lattice_e_, c0, nearest.dist_sq + kTieTol);
    Vector best_rep;
    IntVector best_coords;
    double best_norm = 0.0;
    bool have_best = false;
    for (const auto& cand : candidates) {
        Vector rep = c0 - cand.point;
        IntVector coords = lattice_b_.coords_from_point(rep);
        const double norm = rep.squaredNorm();
        bool better = false;
        if (!have_best || norm < best_norm - kTieTol) {
            better = true;
        } else if (norm <= best_norm + kTieTol) {
            better = std::lexicographical_compare(
                coords.data(), coords.data() + coords.size(), best_coords.data(),
                best_coords.data() + best_coords.size());
        }
        if (better) {
            best_rep = std::move(rep);
            best_coords = std::move(coords);
            best_norm = have_best ? std::min(best_norm, norm) : norm;
            have_best = true;
        }
    }
    return best_rep;
}

Vector QuotientCode::lattice_e_point(const IntVector& window_coords) const {
    const IntMatrix dv = snf_.d * snf_.v;
    const IntVector u = row_apply(window_coords, dv);
    return lattice_b_.point_from_coords(u);
}

Vector QuotientCode::encode(const std::string& bits, const Vector& r) const {
    validate_bits(bits, rate_bits_);
    lattice_e_.coords_from_point(r);  // membership check: r must lie in Lambda_e
    const Vector rep = table_ ? table_->representative(bits)
                              : min_energy_representative(label_from_bits(bits));
    return rep + r;
}

std::pair<std::string, Vector> QuotientCode::decode(const Vector& received) const {
    const LatticePoint nearest = closest_point(lattice_b_, received);
    const IntVector transformed = row_apply(nearest.coords, snf_.v_inv);
    std::vector<std::int64_t> digits(snf_.diag.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        digits[i] = mod_positive(transformed[static_cast<Eigen::Index>(i)],
                                 snf_.diag[i]);
    }
    const std::string bits = table_ ? table_->bits_for_digits(digits)
                                    : coding_.pack(digits);
    return {bits, nearest.point};
}

QuotientCode QuotientCode::with_label_table(
    std::vector<std::pair<std::string, Vector>> entries) const {
    QuotientCode copy = *this;
    copy.table_ = LabelTable::build(*this, std::move(entries));
    return copy;
}

std::vector<std::pair<std::string, Vector>> z2_residue_codebook() {
    auto vec2 = [](double a, double b) {
        Vector v(2);
        v << a, b;
        return v;
    };
    return {
        {"00", vec2(0, 0)},
        {"01", vec2(0, 1)},
        {"10", vec2(1, 0)},
        {"11", vec2(1, 1)},
    };
}

}  // namespace latsec
