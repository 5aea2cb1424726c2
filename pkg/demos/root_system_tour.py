#!/usr/bin/env python3
"""Tour of the exact root-system layer: dimensions, spectra, t-constants.

Everything printed here is exact rational arithmetic; floats appear only in
the final formatting.
"""

from fractions import Fraction

from cqgkhint import build_root_system

q = Fraction(1, 2)

print("=" * 64)
print("Root systems and modular data (q = 1/2)")
print("=" * 64)

for lie_type, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2)]:
    rs = build_root_system(lie_type, rank)
    print(f"\n{lie_type}{rank}: {len(rs.positive_roots)} positive roots")
    print(f"  Cartan matrix rows: {rs.cartan}")
    print(f"  (omega_i, 2 rho) exponents: {rs.two_rho_pairing}")
    print(f"  t-constants t_i = q^(omega_i, 2 rho): {rs.t_constants(q)}")

print("\n" + "=" * 64)
print("Weight systems and the two quantum-dimension routes (A2)")
print("=" * 64)
rs = build_root_system("A", 2)
for mu in [(1, 0), (1, 1), (2, 1)]:
    system = rs.weight_system(mu)
    n = rs.weyl_dimension(mu)
    d_trace = rs.quantum_dimension(mu, q)
    d_product = rs.quantum_dimension_product(mu, q)
    print(f"\nmu = {mu}: classical dim n = {n}, weights = {len(system)}")
    print(f"  multiplicity of the zero weight: {system.get((0, 0), 0)}")
    print(f"  quantum dim via spectral trace : {d_trace}")
    print(f"  quantum dim via q-Weyl product : {d_product}")
    assert d_trace == d_product

print("\n" + "=" * 64)
print("Modular spectrum of the A1 ladder")
print("=" * 64)
rs = build_root_system("A", 1)
for m in range(4):
    spec = rs.q_matrix_spectrum((m,), q)
    print(f"mu = {m}*omega: spectrum {spec.entries}")
    print(f"  Tr(Q) = {spec.trace()} = Tr(Q^-1) = {spec.inv_trace()}")
    print(f"  largest eigenvalue = {spec.max_eigenvalue()} = t_1^(-{m})")
