from fractions import Fraction

import pytest

from afflap.chains import (
    adjoint_action,
    block_dim_table,
    codifferential,
    differential,
    enumerate_block,
    matrix_of,
    weight_dim_table,
)
from afflap.laplacian import (
    characteristic_polynomial,
    expected_homology,
    find_irrational_spectrum,
    harmonic_basis,
    homology_table,
    laplacian_apply,
    laplacian_by_definition,
    laplacian_closed_apply,
    laplacian_closed_form,
    lowering_orbit,
    one_dim_eigenvalue,
    predicted_eigenvalue,
    spectrum,
    two_dim_pairing_oracle,
)


def test_constructions_agree_small():
    for k in (-1, 0, 1, 2, 3, 4):
        for h in range(6):
            basis = enumerate_block(k, h)
            assert laplacian_by_definition(k, basis) == laplacian_closed_form(k, basis)


def test_constructions_agree_higher_k():
    # the second-order expression keeps matching for larger index bounds
    for k in (5, 6, 7):
        for h in range(6):
            basis = enumerate_block(k, h)
            assert laplacian_by_definition(k, basis) == laplacian_closed_form(k, basis)


def test_one_dim_eigenvalues():
    assert one_dim_eigenvalue(2, 7) == 1
    assert one_dim_eigenvalue(1, 1) == 0
    assert one_dim_eigenvalue(3, 3) == 0
    with pytest.raises(ValueError):
        one_dim_eigenvalue(0, 1)
    with pytest.raises(ValueError):
        one_dim_eigenvalue(2, 1)
    for k in (1, 2, 3):
        for a in range(k, 31):
            expect = {} if one_dim_eigenvalue(k, a) == 0 else {(a,): one_dim_eigenvalue(k, a)}
            assert laplacian_apply(k, {(a,): 1}) == expect
            assert laplacian_closed_apply(k, {(a,): 1}) == expect


def test_single_generator_examples():
    assert laplacian_apply(1, {(5,): 1}) == {(5,): 1}
    assert laplacian_apply(2, {(4,): 1}) == {}
    assert laplacian_apply(0, {(0,): 1}) == {}


def test_two_dim_pairing_oracle():
    assert two_dim_pairing_oracle(2, (2, 3), (2, 3)) == 1
    with pytest.raises(ValueError):
        two_dim_pairing_oracle(2, (2, 3), (2, 4))
    with pytest.raises(ValueError):
        two_dim_pairing_oracle(2, (3, 2), (2, 3))
    for k in (1, 2, 3):
        for s in range(2 * k + 1, 25):
            pairs = [(a, s - a) for a in range(k, (s + 1) // 2)]
            for a, b in pairs:
                image = laplacian_apply(k, {(a, b): 1})
                closed = laplacian_closed_apply(k, {(a, b): 1})
                for x, y in pairs:
                    want = two_dim_pairing_oracle(k, (a, b), (x, y))
                    assert image.get((x, y), 0) == want
                    assert closed.get((x, y), 0) == want


def test_zero_block_laplacian():
    basis = enumerate_block(3, 0)
    gamma = laplacian_by_definition(3, basis)
    assert gamma.is_zero() and gamma.rows == 1
    assert characteristic_polynomial(3, basis) == [0, 1]


def test_characteristic_polynomial_block_2_2():
    assert characteristic_polynomial(2, enumerate_block(2, 2)) == [1, -6, 15, -20, 15, -6, 1]


def test_harmonic_basis_examples():
    assert harmonic_basis(1, enumerate_block(1, 1, 2)) == [{(1, 4): Fraction(1)}]
    # top-weight harmonic of L(2) in dimension q
    for q in (1, 2, 3):
        h = q * (q + 1) // 2
        basis = enumerate_block(2, h, q).restrict(q=q)
        kern = harmonic_basis(2, basis)
        assert len(kern) == 1
        mono = tuple(4 + 3 * i for i in range(q))
        (vec,) = kern
        assert set(vec) == {mono}
    basis = enumerate_block(-1, 0, 0).restrict(q=3)
    assert harmonic_basis(-1, basis) == [{(-1, 0, 1): Fraction(1)}]
    # whole-block version: the h=1 block of L(2) is entirely harmonic
    kern = harmonic_basis(2, enumerate_block(2, 1))
    assert [set(v) for v in kern] == [{(2,)}, {(3,)}, {(4,)}]


def test_spectrum_small_blocks():
    assert spectrum(2, 2).lines == [(1, 6)]
    assert spectrum(1, 1).lines == [(0, 2), (1, 4)]
    assert spectrum(0, 0).lines == [(0, 2), (1, 2)]
    assert spectrum(-1, 0).lines == [(0, 2), (1, 6)]
    with pytest.raises(ValueError):
        spectrum(3, 2)


def test_spectrum_degree_zero_blocks():
    # for k >= 2 the degree-zero block is the unit monomial alone; the flat
    # generators enlarge it for k <= 1, and not all of it is harmonic
    # (the splitting e_1 -> e_0 ^ e_1 gives eigenvalue 1 inside L(0))
    assert spectrum(2, 0).lines == [(0, 1)]
    assert spectrum(1, 0).lines == [(0, 2)]  # the unit and the cycle e_1
    assert spectrum(0, 0).lines == [(0, 2), (1, 2)]
    assert spectrum(-1, 0).lines == [(0, 2), (1, 6)]


def test_spectrum_matches_characteristic_polynomial():
    """Independent route: the characteristic polynomial of a whole block,
    with its integer roots stripped, reproduces the spectrum lines."""
    from afflap.linalg import gershgorin_bound, strip_integer_roots
    from afflap.laplacian import definition_matrix

    for k, h in ((2, 5), (1, 4), (-1, 2), (0, 3)):
        gamma = definition_matrix(k, h)
        poly = characteristic_polynomial(k, enumerate_block(k, h))
        roots, rest = strip_integer_roots(poly, gershgorin_bound(gamma))
        assert rest == [1], (k, h)  # the spectrum is integral
        assert sorted(roots.items()) == spectrum(k, h).lines, (k, h)


def test_modular_certificates_match_exact_nullities():
    """On slices large enough to take the modular route, redo every nullity
    by fraction-free elimination and require agreement."""
    from afflap.laplacian import (
        EXACT_NULLITY_CUT,
        _slice_layout,
        _submatrix,
        definition_matrix,
    )
    from afflap.linalg import exact_nullity, nullity_mod_p

    k, h = -1, 7
    res = spectrum(k, h)
    assert res.modular_slices > 0  # the route under test is actually exercised
    gamma = definition_matrix(k, h)
    layout = _slice_layout(k, h)
    dims = {key: len(pos) for key, pos in layout.items()}
    checked = 0
    for (q, w0), positions in sorted(layout.items()):
        n = len(positions)
        if not EXACT_NULLITY_CUT < n <= 130:
            continue
        sub = _submatrix(gamma, positions)
        wp = abs(w0)
        while dims.get((q, wp), 0) or dims.get((q, wp + 1), 0):
            m_pred = dims.get((q, wp), 0) - dims.get((q, wp + 1), 0)
            if m_pred:
                lam = predicted_eigenvalue(k, wp, h)
                assert exact_nullity(sub, lam) == m_pred == nullity_mod_p(sub, lam)
                checked += 1
            wp += 1
    assert checked >= 3


def test_multiplicities_of_Lminus1_match_L0():
    # the total eigenvalue multiplicities of the two algebras coincide
    for lam_max in (4,):
        totals = {-1: {}, 0: {}}
        for k in (-1, 0):
            for h in range(lam_max + 1):
                for lam, mult in spectrum(k, h).lines:
                    if lam <= lam_max:
                        totals[k][lam] = totals[k].get(lam, 0) + mult
        assert totals[-1] == totals[0]


def test_spectrum_totals_and_positivity():
    for k in (-1, 0, 1, 2):
        for h in range(6):
            res = spectrum(k, h)
            assert sum(m for _, m in res.lines) == res.dim
            assert all(lam >= 0 for lam, _ in res.lines)
            assert res.dim == enumerate_block(k, h).dim


def test_laplacian_is_symmetric():
    # delta is the adjoint of d, so d delta + delta d is symmetric
    for k in (-1, 0, 1, 2, 3):
        for h in range(5):
            assert laplacian_by_definition(k, enumerate_block(k, h)).is_symmetric()


def test_laplacian_commutes_with_differentials():
    for k in (-1, 0, 1, 2):
        for h in range(5):
            basis = enumerate_block(k, h)
            gamma = laplacian_by_definition(k, basis)
            d = matrix_of(lambda c: differential(k, c), basis, basis)
            delta = matrix_of(lambda c: codifferential(k, c), basis, basis)
            assert gamma * d == d * gamma
            assert gamma * delta == delta * gamma


def test_laplacian_commutes_with_sl2():
    for k in (-1, 2):
        for h in range(4):
            basis = enumerate_block(k, h)
            gamma = laplacian_by_definition(k, basis)
            for g in (-1, 0, 1):
                act = matrix_of(lambda c: adjoint_action(g, c, k), basis, basis)
                assert gamma * act == act * gamma


def test_harmonic_chains_are_cycles():
    for k in (-1, 0, 1, 2):
        for h in range(5):
            basis = enumerate_block(k, h)
            for chain in harmonic_basis(k, basis):
                assert differential(k, chain) == {}


def test_homology_tables_match_closed_forms():
    for k in (-1, 0, 1, 2):
        table = homology_table(k, 6)
        assert table.matches_closed_form, table.deviations


def test_expected_homology_forms():
    assert expected_homology(0, 8) == {(0, 0, 0): 1, (1, 0, 0): 1}
    assert expected_homology(-1, 8) == {(0, 0, 0): 1, (3, 0, 0): 1}
    e1 = expected_homology(1, 3)
    assert e1 == {(0, 0, 0): 1, (1, 1, 0): 1, (1, -1, 1): 1,
                  (2, 2, 1): 1, (2, -2, 3): 1, (3, 3, 3): 1}
    e2 = expected_homology(2, 3)
    assert e2 == {(0, 0, 0): 1, (1, -1, 1): 1, (1, 0, 1): 1, (1, 1, 1): 1,
                  (2, -2, 3): 1, (2, -1, 3): 1, (2, 0, 3): 1, (2, 1, 3): 1, (2, 2, 3): 1}


def test_lowering_orbit_family():
    for q in (1, 2, 3):
        for r in range(2 * q + 1):
            c = lowering_orbit(q, r)
            assert c, (q, r)
            assert laplacian_apply(2, c) == {}
        assert lowering_orbit(q, 2 * q + 1) == {}


def test_staircase_family_for_higher_k():
    """c_q = e_{3r+1} ^ ... in L(3r-1) is harmonic of weight q for every r."""
    from afflap.chains import raising_action

    for r, k in ((1, 2), (2, 5), (3, 8)):
        for q in (1, 2, 3):
            c = {tuple(3 * r + 1 + 3 * i for i in range(q)): 1}
            assert laplacian_apply(k, c) == {}
            assert raising_action(1, c, k) == {}
            assert adjoint_action(0, c, k) == {m: q for m in c}


def test_euler_characteristic_per_weight_eigenvalue_block():
    """Alternating q-sums over a (w, lambda) block of L(1): (-1)^w at
    lambda = 0, zero otherwise."""
    table = block_dim_table(1, 14)
    for w in range(-4, 5):
        for lam in range(5):
            h = lam + w * (w - 1) // 2
            if h < 0:
                continue
            total = 0
            for (q, ww, hh), n in table.items():
                if ww == w and hh == h:
                    total += n if q % 2 == 0 else -n
            assert total == ((1 if w % 2 == 0 else -1) if lam == 0 else 0), (w, lam)


def test_block_membership_laws():
    # (w, h) supports monomials of L(1) exactly when h >= w(w-1)/2
    dims = weight_dim_table(1, 8)
    for w in range(-6, 7):
        for h in range(9):
            assert (dims.get((w, h), 0) > 0) == (h - w * (w - 1) // 2 >= 0), (w, h)
    # dominant weight w >= 1 occurs in degree h of L(2) exactly when
    # h >= w(w+1)/2; at w = 0 the degrees 1 and 2 are genuine exceptions
    # (those blocks are V(1) and 2 V(1), with no trivial summand)
    from afflap.sl2 import singular_block_dims

    for w in range(5):
        for h in range(9):
            expected = h - w * (w + 1) // 2 >= 0 and (w, h) not in ((0, 1), (0, 2))
            assert (singular_block_dims(2, w, h) > 0) == expected, (w, h)


def test_predicted_eigenvalue_laws():
    assert predicted_eigenvalue(0, 1, 0) == 1
    assert predicted_eigenvalue(1, 2, 1) == 0
    assert predicted_eigenvalue(2, 1, 2) == 1
    assert predicted_eigenvalue(-1, 1, 0) == 1
    with pytest.raises(ValueError):
        predicted_eigenvalue(5, 0, 0)


def test_irrational_spectrum_for_k3():
    finding = find_irrational_spectrum(3, 6)
    assert finding is not None
    assert finding.h == 5 and len(finding.factor) >= 3
    # the quadratic factor t^2 - 6t + 7 has roots 3 +- sqrt(2)
    assert finding.factor == (7, -6, 1)
