#include "rotor/scenario.hpp"

namespace rotor {

namespace {

const char* kExampleH = R"(# h(x, y) = (x + 0.05 sin 4pi x, y + 0.1 sin 2pi x) together with phi = -Id.
# h fixes the circles x = 0 and x = 1/2 pointwise and drifts along x = 1/4, 3/4.

[generator h]
matrix = 1 0 0 1
x = 0.05 2 0
y = 0.1 1 0

[generator phi]
matrix = -1 0 0 -1

[measure circle]
kind = circle-x
x = 1/4
n = 1000

[measure fixed_atom]
kind = dirac
point = 0 0.3

[analysis classes]
type = classify
words = h phi
expect_tag = cyclic
expect_order = 2
expect_condition = false

[analysis h_rotation]
type = rotation-set
word = h
seeds = 16
n = 1000
measure = circle
irrotational_tol = 1e-3
expect_hull = 0 -0.1 0 0.1
expect_rotation = 0 0.1
expect_irrotational = false

[analysis h_fixed]
type = fixed-points
words = h
expect_points = 0
expect_chains = 2
expect_contains = 0 0.3 0.5 0.7

[analysis h_phi_common]
type = fixed-points
words = h phi
expect_nonempty = true
expect_contains = 0 0 0.5 0.5

[analysis refused]
type = invariant-measure
base = h
extension = phi
track = h
measure = circle
expect_refused = true

[analysis forced]
type = invariant-measure
base = h
extension = phi
track = h
measure = circle
force = true
expect_rotation = 0 0

[analysis franks_fixed]
type = fixed-points
words = h
franks = fixed_atom
expect_verdict = consistent

[analysis franks_drifting]
type = fixed-points
words = h
franks = circle
expect_verdict = hypothesis_not_met
)";

const char* kLinearGroups = R"(# Classes of linear maps: cyclic, pair, finite dihedral and non-nilpotent groups.

[generator dehn]
matrix = 1 0 1 1

[generator minus_dehn]
matrix = -1 0 -1 -1

[generator dehn_t]
matrix = 1 1 0 1

[generator anosov]
matrix = 2 1 1 1

[generator minus_id]
matrix = -1 0 0 -1

[generator quarter]
matrix = 0 -1 1 0

[generator swap]
matrix = 0 1 1 0

[analysis dehn_group]
type = classify
words = dehn
expect_tag = cyclic
expect_condition = true
expect_index = 1

[analysis minus_dehn_group]
type = classify
words = minus_dehn
expect_tag = cyclic
expect_condition = false

[analysis dehn_and_minus_id]
type = classify
words = dehn minus_id
expect_tag = pair
expect_condition = false

[analysis anosov_pair]
type = classify
words = anosov minus_id
expect_tag = pair
expect_condition = true

[analysis dihedral]
type = classify
words = quarter swap
expect_tag = dihedral_H_conjugate
expect_order = 8
expect_condition = false
expect_index = 8

[analysis two_twists]
type = classify
words = dehn dehn_t
expect_tag = not_nilpotent
)";

const char* kDehn = R"(# The Dehn twist (x, y + x) against dyadic translations.

[generator dehn]
matrix = 1 0 1 1

[generator t]
matrix = 1 0 0 1
x = 1/4 0 0 pi/2
y = 1/8 0 0 pi/2

[measure grid]
kind = grid
n = 64

[analysis twist_rotation]
type = rotation-set
word = dehn
convention = fundamental-domain
seeds = 64
n = 1000
expect_hull = 0 0 0 1

[analysis pushforward_identity]
type = rotev
g = dehn
h = t
measure = grid
p = -5 -4 -3 -2 -1 1 2 3 4 5
orbit_rho = 0 0.5
orbit_w = 0 0
expect_bounded = true

[analysis unbounded_orbit]
type = rotev
g = dehn
h = t
measure = grid
p = 1 2
orbit_rho = 0.25 0.125
orbit_w = 0 0
expect_bounded = false

[analysis averaged]
type = invariant-measure
base = t
extension = dehn
declared = 1 0 1 1
track = t
measure = grid
expect_preserved = true
expect_tol = 1e-6
)";

const char* kSkews = R"(# Skew products over circle rotations and a map with isolated fixed points.

[generator skew]
matrix = 1 0 0 1
y = 0.1 1 0

[generator skew_irr]
matrix = 1 0 0 1
x = 0.41421356237309515 0 0 pi/2
y = 0.7320508075688772 0 0 pi/2
y = 0.1 1 0

[generator skew_x]
matrix = 1 0 0 1
x = 0.1 0 1

[generator product]
matrix = 1 0 0 1
x = 0.1 1 0
y = 0.1 0 1

[word skew_up]
letters = skew
lift = 0 1

[analysis irrational_skew]
type = rotation-set
word = skew_irr
seeds = 8
n = 100000
expect_hull = 0.41421356237309515 0.7320508075688772
expect_hausdorff = 5e-3

[analysis skew_fixed]
type = fixed-points
words = skew
expect_chains = 2
expect_contains = 0 0.25 0.5 0.75

[analysis shifted_lift]
type = fixed-points
words = skew_up
lift = true
expect_nonempty = false

[analysis product_fixed]
type = fixed-points
words = product
expect_points = 4
expect_index_sum = 0
expect_contains = 0 0 0 0.5 0.5 0 0.5 0.5

[analysis common]
type = fixed-points
words = skew skew_x
expect_points = 4
)";

const char* kKlein = R"(# Maps that commute with sigma(x, y) = (x + 1/2, -y), and one that does not.

[generator skew]
matrix = 1 0 0 1
y = 0.1 1 0
inverse = closed skew_inv

[generator skew_inv]
matrix = 1 0 0 1
y = -0.1 1 0
inverse = closed skew

[generator s4]
matrix = 1 0 0 1
y = 0.1 2 0
inverse = closed s4_inv

[generator s4_inv]
matrix = 1 0 0 1
y = -0.1 2 0
inverse = closed s4

[annulus twist]
a = 1 0 pi/2 0 0.5 -0.5

[measure circle]
kind = circle-x
x = 1/4
n = 1000

[measure level]
kind = circle-y
y = 1/4
n = 1000

[analysis skew_klein]
type = klein
word = skew
measure = circle
expect_equivariant = true
expect_rho_bar = 0 0.1

[analysis sin4_klein]
type = klein
word = s4
expect_equivariant = false
expect_defect = 0.2
expect_tol = 1e-9

[analysis twist_klein]
type = klein
word = twist
measure = level
expect_equivariant = true
expect_rho_bar = 0.125 0

[analysis twist_rotation]
type = rotation-set
word = twist
measure = level
expect_rotation = 0.125 0
expect_hull = 0 0 0.125 0
expect_hausdorff = 2e-2
)";

const char* kVerify = R"(# A quick subset of the built-in verification suite.

[analysis quick_suite]
type = verify
criteria = 1 2 10
)";

}  // namespace

const std::vector<ExampleScenario>& example_scenarios() {
  static const std::vector<ExampleScenario> e = {
      {"example_h.rotor", "the map h with the antipodal map: fixed circles, refusal and forced averaging", kExampleH},
      {"linear_groups.rotor", "classification of mapping class subgroups", kLinearGroups},
      {"dehn.rotor", "Dehn twist rotation set, pushforward identity and averaging", kDehn},
      {"skews.rotor", "skew products: rotation sets and fixed points", kSkews},
      {"klein.rotor", "sigma-equivariance, the annulus twist and the reduced rotation", kKlein},
      {"verify.rotor", "a quick subset of the verification suite", kVerify},
  };
  return e;
}

}  // namespace rotor
