#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fpp/levi.hpp"
#include "fpp/param.hpp"

namespace fpp::verify {

using Json = nlohmann::ordered_json;

/// A family of Hermitian module parameters (λ_L, λ_R) with affine-form coordinates,
/// together with the base parameter region and the Levi data of the lowest type.
struct HermitianTemplate {
  const RootDatum* datum = nullptr;
  std::string name;
  ParamSpacePtr space;
  AffineWeight eta;       // λ_L − λ_R; constant except in the reduction templates
  AffineWeight lambda_L;
  AffineWeight lambda_R;
  Region base_region;
  std::vector<int> mf_nodes;
  std::vector<Weight> gammas;           // exclusion targets of the case, if any
  std::vector<Region> expected_outside; // the claimed outside-FPP set, if any
};

/// The named cases: g2-eta10, g2-eta20, f4-eta0010, f4-eta0001, f4-reduction-0020,
/// g2-reduction-a0, g2-reduction-0b. Throws input_error for anything else.
HermitianTemplate builtin_template(std::string_view case_name);
std::vector<std::string> builtin_case_names();

struct VerificationReport {
  std::string case_name;
  std::string status;  // verified | counterexample | error
  Json details;        // count / regions / witnesses / samples / inputs
  double elapsed_ms = 0.0;

  bool verified() const { return status == "verified"; }
  Json to_json(bool with_timing = false) const;
};

struct VerifyOptions {
  int threads = 0;  // 0 = hardware concurrency
};

/// Dominantizes λ_L over the base region and compares the outside-FPP union with
/// the claimed threshold set by exact region equivalence.
VerificationReport verify_outside_fpp_threshold(std::string_view case_name,
                                                const VerifyOptions& options = {});

/// f4-eta0001: counts the Weyl elements with a nonempty witness region
/// (dominance ∧ max{a,b,c} > 1 ∧ outside FPP) and pins the s1s2s3s4 element's
/// symbolic image and region against the claimed bullets.
VerificationReport enumerate_outside_fpp_witnesses(const VerifyOptions& options = {});

/// Checks that no character-formula term indexed by w' outside W(M_f) can contribute
/// the K-type γ on the case's hypothesis region: every dominantization cell of
/// μ(w') = λ_L − w'(−λ_R) has an empty γ-equality set.
VerificationReport second_part_excludes(std::string_view case_name, const Weight& gamma,
                                        const VerifyOptions& options = {});

/// Runs second_part_excludes for every γ in the case's catalog.
VerificationReport second_part_excludes_all(std::string_view case_name,
                                            const VerifyOptions& options = {});

/// f4-reduction-0020: every cell over the fully-supported subregion stays inside FPP.
/// g2-reduction-a0 / g2-reduction-0b: the fully-supported subregion is empty.
VerificationReport verify_reduction_case(std::string_view case_name);

/// Random classical templates at a fixed seed: block structure plus exact grid
/// values; samples whose per-factor infinitesimal characters stay inside FPP and
/// that carry a Hermitian witness must be either not fully supported (a node
/// outside I(M_f) missing from the support) or have dominant form inside FPP.
VerificationReport verify_classical(char family, int rank, int samples, std::uint64_t seed,
                                    const VerifyOptions& options = {});

/// Exhaustive dominant integral η with coordinates <= cap: adjoint bottom-layer
/// checks on spherical factors and catalog-γ bottom-layer checks on the others.
VerificationReport verify_bottom_layer_sweep(char family, int rank, int cap,
                                             const VerifyOptions& options = {});

struct VerifyAllOptions {
  int samples = 10000;
  std::uint64_t seed = 20240001;
  int cap = 3;
  int threads = 0;
};

/// The full named suite: thresholds, enumeration, exclusions, reductions, classical
/// samplers (A–D up to rank 6) and bottom-layer sweeps (all families up to rank 8).
std::vector<VerificationReport> verify_all(const VerifyAllOptions& options = {});

}  // namespace fpp::verify
