"""Why the D4 pair comes out non-symplectic here.

Prints the closed-form data behind the verdict, then shows that the printed
form closes only when the two Z_ij brackets carry the same sign.
"""

from nilsymp import fixtures
from nilsymp.cohom import closed_2forms, d_form, exact_2forms, pt_image
from nilsymp.nilrad import ParabolicSpec, build_nilradical, extend_trivially
from nilsymp.symp import decide, verify_symplectic

spec = ParabolicSpec.of("D4", (3, 4))
n = build_nilradical(spec)
print(f"D4:3,4  dim {n.dim}  b2 = {closed_2forms(n).dim - exact_2forms(n).dim}  dim P_1(Z^2) = {pt_image(n, 1).dim}")
for target in ("n", "R+n"):
    v = decide(n, target, spec, corroborate=True)
    cert = v.certificate or {}
    print(f"  {target}: {v.outcome} - {v.evidence()}")
    if cert:
        print(f"      sampling: max rank {cert['max_rank']} of {cert['dim']} in {cert['samples']} samples, "
              f"failure bound 2^{cert['log2_failure_bound']}")

for sign in (-1, +1):
    m, omega = fixtures.d4_extension_witness(sign)
    d = d_form(m, omega)
    print(f"[X_j, Y_i] = {sign:+d} Z_ij: d omega = {d.format(m.labels)}; symplectic: {verify_symplectic(m, omega)}")
