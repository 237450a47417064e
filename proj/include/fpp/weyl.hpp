#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fpp/rootsys.hpp"

namespace fpp {

/// A Weyl-group element given as a word in the simple reflections.
/// The leftmost letter acts last: apply_word(w, λ) = s_{letters[0]}(s_{letters[1]}(…λ)).
struct WeylWord {
  const RootDatum* datum = nullptr;
  std::vector<int> letters;  // 1-based node indices

  bool empty() const { return letters.empty(); }
};

WeylWord make_word(const RootDatum& datum, std::vector<int> letters);
WeylWord parse_word(const RootDatum& datum, std::string_view csv);
std::string word_str(const WeylWord& w);

/// s_i λ = λ − ⟨λ, β_i^∨⟩ β_i.
Weight apply_simple(int i, const Weight& lambda);
Weight apply_word(const WeylWord& w, const Weight& lambda);

/// Group composition: (u ∘ v)(λ) = u(v(λ)).
WeylWord compose(const WeylWord& u, const WeylWord& v);
WeylWord inverse(const WeylWord& w);

/// Length of the group element (inversion count), independent of the word.
int weyl_length(const WeylWord& w);

/// Canonical reduced word for the same group element (greedy right-descent peeling).
WeylWord reduce_word(const WeylWord& w);

bool same_element(const WeylWord& a, const WeylWord& b);

struct Dominantization {
  Weight dominant;  // Λ
  WeylWord word;    // s with apply_word(s, λ) = Λ, reduced
};

/// First negative index algorithm: repeatedly reflect at the smallest index with a
/// negative coordinate. The resulting word is reduced; empty iff λ was dominant.
Dominantization dominantize(const Weight& lambda);

struct WeylElement {
  std::vector<int> word;        // reduced
  std::vector<long> rho_image;  // coordinates of w(ρ), a faithful key
};

struct EnumerationOptions {
  std::uint64_t max_elements = 2'000'000;
};

/// Order of the Weyl group (or of the parabolic subgroup generated by `nodes`).
std::uint64_t weyl_order(const RootDatum& datum, const std::vector<int>& nodes);
std::uint64_t weyl_order(const RootDatum& datum);

/// Enumerates the Weyl group (or the parabolic subgroup generated by `restricted_to`),
/// one reduced word per element, sorted by length then lexicographic word.
/// Guards: full groups only for rank <= 4 families plus classical rank <= 6;
/// parabolic subgroups for rank <= 8 data; hard element budget on top.
std::vector<WeylElement> enumerate_weyl(const RootDatum& datum,
                                        const std::optional<std::vector<int>>& restricted_to = {},
                                        const EnumerationOptions& options = {});

/// Cached variant of enumerate_weyl (same guards); the result is owned by a registry.
const std::vector<WeylElement>& enumerate_weyl_cached(
    const RootDatum& datum, const std::optional<std::vector<int>>& restricted_to = {});

/// Longest element of the parabolic subgroup generated by `nodes` (reduced word).
WeylWord longest_element(const RootDatum& datum, const std::vector<int>& nodes);

/// Support of the module J(λ, -wλ): dominantize λ with word s, reduce x = s w s^{-1},
/// and return the set of letters of x (well defined: support is word independent).
std::set<int> module_support(const Weight& lambda, const WeylWord& w);

/// The parameter pair (λ_L, λ_R) of a module, with μ = λ_L − λ_R and ν = λ_L + λ_R.
struct ModulePair {
  Weight lambda_L;
  Weight lambda_R;

  Weight mu() const { return lambda_L - lambda_R; }
  Weight nu() const { return lambda_L + lambda_R; }
};

ModulePair make_pair(Weight lambda_L, Weight lambda_R);

/// Some w with wμ = μ and wν = −ν, if one exists (real infinitesimal character).
std::optional<WeylWord> hermitian_witness(const ModulePair& p);
bool is_hermitian_pair(const ModulePair& p);

/// Some w carrying both coordinates of p onto q simultaneously, if one exists.
std::optional<WeylWord> equivalence_witness(const ModulePair& p, const ModulePair& q);
bool modules_equivalent(const ModulePair& p, const ModulePair& q);

}  // namespace fpp
