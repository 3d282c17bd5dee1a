import math

import pytest

from arakelov.polynomials import PrimitivePolynomial, cyclotomic_polynomial, parse_polynomial
from arakelov.roots import complex_roots

from test_polynomials import random_polys


def close_to_set(z, targets, tol):
    return min(abs(z - t) for t in targets) <= tol


class TestExamples:
    def test_sqrt2(self):
        certified = complex_roots(parse_polynomial("x^2 - 2"), tol=1e-12)
        targets = (math.sqrt(2), -math.sqrt(2))
        assert all(close_to_set(z, targets, 1e-12) for z in certified.roots)
        assert certified.max_radius() <= 1e-12

    def test_gaussian_units(self):
        certified = complex_roots(parse_polynomial("x^2 + 1"))
        assert all(close_to_set(z, (1j, -1j), 1e-12) for z in certified.roots)

    def test_golden_ratio_quadratic_formula_oracle(self):
        phi = (1 + math.sqrt(5)) / 2
        psi = (1 - math.sqrt(5)) / 2
        certified = complex_roots(parse_polynomial("x^2 - x - 1"))
        assert all(close_to_set(z, (phi, psi), 1e-12) for z in certified.roots)


class TestCertificates:
    def test_disjoint_disks_and_radius(self):
        for f in random_polys(seed=41, count=30):
            certified = complex_roots(f, tol=1e-12)
            n = certified.degree
            assert n == f.degree
            assert certified.max_radius() <= 1e-12
            for i in range(n):
                for j in range(i + 1, n):
                    sep = abs(certified.roots[i] - certified.roots[j])
                    assert sep > certified.radii[i] + certified.radii[j]

    def test_residual_consistent_with_radius(self):
        # |f(z)| <= radius * max |f'| over the disk
        for f in random_polys(seed=43, count=20):
            certified = complex_roots(f)
            for z, rad in zip(certified.roots, certified.radii):
                value = abs(f(z))
                bound = sum(k * abs(c) * (abs(z) + rad) ** (k - 1)
                            for k, c in enumerate(f.coeffs) if k >= 1)
                assert value <= rad * bound * (1 + 1e-9) + 1e-300

    def test_vieta_product(self):
        for f in random_polys(seed=47, count=30):
            certified = complex_roots(f)
            prod = 1.0
            for z in certified.roots:
                prod *= abs(z)
            assert prod * f.leading == pytest.approx(abs(f.coeffs[0]), rel=1e-9)

    def test_high_degree_cyclotomic(self):
        certified = complex_roots(cyclotomic_polynomial(64), tol=1e-12)
        assert certified.degree == 32
        assert all(abs(abs(z) - 1) <= 1e-13 for z in certified.roots)

    def test_deterministic_and_sorted(self):
        f = parse_polynomial("x^5 - 4x^3 + x - 3")
        a = complex_roots(f)
        b = complex_roots(f)
        assert a == b
        keys = [(z.real, z.imag) for z in a.roots]
        assert keys == sorted(keys)

    def test_degree_one(self):
        certified = complex_roots(parse_polynomial("3x - 2"))
        assert certified.roots[0] == pytest.approx(2 / 3, abs=1e-15)
        assert certified.max_radius() <= 1e-12

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            complex_roots(parse_polynomial("x^2 - 2"), tol=0.0)

    def test_tight_cluster_still_certifies(self):
        # roots 0, 1e-6, 1: (x)(10^6 x - 1)(x - 1) scaled to integers
        f = PrimitivePolynomial.from_coeffs([0, 1, -1000001, 1000000])
        certified = complex_roots(f, tol=1e-12)
        assert certified.max_radius() <= 1e-12
        assert close_to_set(0.0, certified.roots, 1e-12)
        assert close_to_set(1e-6, certified.roots, 1e-12)
