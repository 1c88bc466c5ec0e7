# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

from systocap import EllipsoidGauge, LpGauge, capacity, pullback_gauge, systole
from systocap.lattice import UnimodularMatrix

# flat Riemannian torus, the lattice vector (1, -1) has length one
ellipsoid = EllipsoidGauge([[5, 3], [3, 2]])
result = systole(ellipsoid)
print(f"systole = {result.s}, minimizer = {result.u}")

certificate = capacity(ellipsoid, samples=2000, seed=0)
print(f"capacity = {certificate.value} ({certificate.case.value})")
print(f"cylinder radius = {certificate.r1}, widths = {certificate.widths}")

# l^4 norm: the upper bound is certified, equality relies on c_HZ(K x K*) = 4
l4 = LpGauge(2, 4)
certificate = capacity(l4, samples=2000, seed=0)
print(f"capacity = {certificate.value} ({certificate.case.value})")
for note in certificate.notes:
    print(f"  {note}")

# the capacity does not change under a unimodular change of basis
pulled = pullback_gauge(l4, UnimodularMatrix([[2, 1], [3, 2]]))
print(f"capacity after change of basis = {capacity(pulled, samples=2000, seed=0).value}")
