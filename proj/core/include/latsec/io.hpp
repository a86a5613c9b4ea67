#pragma once

#include "latsec/channel.hpp"
#include "latsec/lattice.hpp"
#include "latsec/quotient.hpp"
#include "latsec/theta.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace latsec {

/// "p/q" or decimal literal. Rationals are preferred in generator files so
/// sublattice checks stay exact.
double parse_rational(const std::string& token);

/// Generator matrix file: one basis row per line, whitespace-separated
/// decimal or rational entries; blank lines and lines starting with '#'
/// skipped. All rows must have equal length.
Matrix load_generator_file(const std::string& path);

/// Lattice grammar: `Zn:<n>` / `Z<n>`, `Dn:<n>` / `D<n>`, `E8`, `E8A`,
/// `<a>*<spec>` for scaling (a decimal or rational), otherwise a generator
/// file path. Throws InvalidArgument for `Leech` (closed-form theta only).
Lattice parse_lattice(const std::string& spec);

/// Same grammar for theta work: named families (including `Leech`) become
/// closed forms, scaling included; `E8A` and file paths enumerate.
ThetaSource parse_theta_source(const std::string& spec);

/// One row of a secrecy-function sweep.
struct SecrecySweepRow {
    double y;
    double theta_lattice;
    double theta_zn;
    double xi;
};

/// CSV with header `y,theta_lattice,theta_Zn,xi`, 15 significant digits.
void write_secrecy_csv(std::ostream& out, const std::vector<SecrecySweepRow>& rows);

struct SigmaSweepRow {
    double sigma_e;
    double p_mc;
    double stderr_mc;
    double p_approx;
};

/// CSV with header `sigma_e,p_mc,stderr,p_approx`, 15 significant digits.
void write_sigma_sweep_csv(std::ostream& out, const std::vector<SigmaSweepRow>& rows);

/// SimReport with the documented field names (trials, p_correct_bob,
/// p_correct_eve, stderr_bob, stderr_eve, approx_pcb, approx_pce,
/// ratio_analytic, ratio_empirical, seed, config).
nlohmann::json sim_report_to_json(const SimReport& report);

/// Audit dump: JSON array of {label_bits, representative_coordinates} with
/// the min-energy representative (or the attached label table's) per coset.
nlohmann::json codebook_to_json(const QuotientCode& quotient);

std::string format_significant(double value);  // %.15g

}  // namespace latsec
