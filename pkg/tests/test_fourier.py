import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hamming_lp import DomainError, InvariantError
from hamming_lp.codes import BinaryCode, average_distance, distance_distribution, krawtchouk_transform
from hamming_lp.fourier import (
    BooleanFunction,
    FourierSpectrum,
    constant,
    dictator,
    dual_from_weights,
    evaluate_expansion,
    fourier_coefficient_direct,
    from_code,
    from_table_bits,
    noise_stability,
    q_agree,
    q_agree_direct,
    q_from_dual,
    read_truth_table,
    stability_from_q,
    to_table_bits,
    w1_distance_bridge,
    weight_profile,
    weights_of,
    wht,
    write_truth_table,
)


@st.composite
def functions(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    bits = draw(st.lists(st.sampled_from([-1, 1]), min_size=1 << n, max_size=1 << n))
    if 1 not in bits:
        bits[0] = 1
    return BooleanFunction(n, tuple(bits))


AND2 = from_table_bits("0001")


def test_and_spectrum():
    assert wht(AND2).coeffs == (Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    prof = weights_of(AND2)
    assert prof.w == (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))
    assert noise_stability(AND2, Fraction(1, 2)) == Fraction(9, 16)
    assert q_agree(AND2, Fraction(1, 2)) == Fraction(9, 64)
    assert q_agree_direct(AND2, Fraction(1, 2)) == Fraction(9, 64)
    assert dual_from_weights(prof).q == (1, 2, 1)


def test_dictator_and_constant():
    d = dictator(4, 2)
    assert weights_of(d).w == (0, 1, 0, 0, 0)
    assert weights_of(constant(3)).w == (1, 0, 0, 0)


@given(functions())
def test_parseval_and_expansion(f):
    spec = wht(f)
    assert spec.parseval() == 1
    for x in range(1 << f.n):
        assert evaluate_expansion(spec, x) == f(x)


@given(functions(max_n=4), st.data())
def test_fast_transform_matches_direct_coefficient(f, data):
    S = data.draw(st.integers(0, (1 << f.n) - 1))
    assert wht(f).coeffs[S] == fourier_coefficient_direct(f, S)


@given(functions())
def test_weights_and_distance(f):
    prof = weights_of(f)
    a = f.density
    assert prof.w[0] == (2 * a - 1) ** 2
    code = f.preimage()
    assert prof.w[1] == w1_distance_bridge(f.n, a, average_distance(code))
    assert dual_from_weights(prof) == krawtchouk_transform(distance_distribution(code))


@given(functions(max_n=4), st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(-1, 2), Fraction(1)]))
def test_noise_routes_agree(f, rho):
    q = q_agree(f, rho)
    assert q == q_agree_direct(f, rho)
    Q = krawtchouk_transform(distance_distribution(f.preimage()))
    assert q == q_from_dual(Q, rho)
    assert stability_from_q(f.density, q) == noise_stability(f, rho)


def test_weight_profile_rejects_non_boolean_spectrum():
    with pytest.raises(InvariantError):
        weight_profile(FourierSpectrum(1, (Fraction(1), Fraction(1))), Fraction(1, 2))


def test_rho_domain():
    with pytest.raises(DomainError):
        q_agree(AND2, 2)


def test_table_bits(tmp_path):
    f = from_code(BinaryCode.from_strings(["10", "11"]))
    assert to_table_bits(f) == "0101"
    path = tmp_path / "f.txt"
    write_truth_table(f, path)
    assert read_truth_table(path) == f
    with pytest.raises(DomainError):
        from_table_bits("010")
