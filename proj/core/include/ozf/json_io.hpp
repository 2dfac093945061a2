#pragma once

#include <string>
#include <vector>

#include "ozf/hyperdominant.hpp"
#include "ozf/matrix.hpp"
#include "ozf/multiplier.hpp"
#include "ozf/nonlinearity.hpp"
#include "ozf/periodic_banded.hpp"
#include "ozf/plant.hpp"
#include "ozf/signal.hpp"
#include "ozf/simulator.hpp"
#include "ozf/sprocedure.hpp"

// Wire formats. Parsers validate through the type constructors and throw on
// malformed input; writers emit deterministic, key-sorted JSON so equal
// values serialize to identical bytes.
namespace ozf {

std::string to_json(const Signal& s);
Signal signal_from_json(const std::string& text);

std::string to_json(const RationalPlant& p);
RationalPlant plant_from_json(const std::string& text);

std::string to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

std::string to_json(const PermutationCombo& combo);
PermutationCombo permutation_combo_from_json(const std::string& text);

std::string to_json(const PeriodicBandedOperator& op);
PeriodicBandedOperator periodic_operator_from_json(const std::string& text);

std::string to_json(const BandedPeriodicPermutation& p);
BandedPeriodicPermutation banded_permutation_from_json(const std::string& text);

std::string to_json(const std::vector<PeriodicConicTerm>& terms);
std::vector<PeriodicConicTerm> periodic_conic_terms_from_json(const std::string& text);

std::string to_json(const FirMultiplier& m);
FirMultiplier multiplier_from_json(const std::string& text);

std::string to_json(const PiecewiseLinearMonotone& n);
PiecewiseLinearMonotone monotone_from_json(const std::string& text);

std::string to_json(const SectorNonlinearity& s);
SectorNonlinearity sector_from_json(const std::string& text);

std::string to_json(const QuadraticForm& q);
QuadraticForm quadratic_form_from_json(const std::string& text);

std::string to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);

std::string to_json(const SearchReport& r);

std::string to_json(const SimResult& r);

/// Trace CSV with columns k, e_k, v_k, w_k, gain_tau (blank where undefined).
std::string sim_result_csv(const Signal& input, const SimResult& r);

}  // namespace ozf
