# The randomized verification harness.
#
# Every structural fact the toolkit relies on is wired to a seeded
# pass/fail suite over freshly generated instances.  Reports are
# deterministic in (suite, trials, seed, tol), so a passing run is
# reproducible bit for bit.  The same suites back the `nce verify` CLI.

import json

from ncentropy import InstanceFamily, Seed, generate_instance, run_suite

# Peek at an instance: a random morphism in canonical form plus a state.
f, omega = generate_instance(InstanceFamily(), Seed(2024))
print("domain blocks:   ", f.domain.blocks)
print("codomain blocks: ", f.codomain.blocks)
print("multiplicities:\n", f.multiplicities)
print("state weights:   ", omega.weights.round(4))

# Run a few suites at modest trial counts.
for name in ("coboundary", "concavity", "orthogonal-affinity", "disintegration"):
    report = run_suite(name, 50, Seed(2024), 1e-9)
    print(f"{name:20s} pass={report.passed} max_residual={report.max_residual:.2e}")

# The characterization fit: feeding the entropy change to its own
# least-squares scaling test returns the constant 1 with zero residual.
fit = run_suite("characterization-fit", 100, Seed(2024), 1e-9)
print("fitted constant:", fit.fitted_constant)
print(json.dumps(fit.to_json())[:120], "...")
