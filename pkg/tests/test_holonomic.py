"""Tests for P-recurrences and differential operators."""

import itertools

import pytest
from sympy import Poly

from octquad.holonomic import (
    E_EQUATION_RHS,
    N,
    T,
    DiffOperator,
    PRecurrence,
    apply_operator,
    c2_recurrence,
    c_operator,
    d_dt,
    diff_to_rec,
    e3_recurrence,
    e_operator,
    first_violation,
    identity,
    l3_operator,
    l6_operator,
    mul_t,
    q_operator,
    q_recurrence_check,
    q_two_term_recurrence,
    rec_generate,
    rec_verify,
    resolve_sigma,
    t3_recurrence,
    uniform_recurrence,
)
from octquad.laurent import ct_sequence, octant_kernel, sl3_kernel
from octquad.seqcore import Sequence, binomial_transform, reference
from octquad.series import PowerSeries
from octquad.walks import count_excursions, octant_g2_model

QUADRANT_TAGS = ("A151366", "A236408", "A001181", "A216947")


@pytest.fixture(scope="module")
def t3_terms():
    return ct_sequence(*octant_kernel(0), 59)


@pytest.fixture(scope="module")
def e3_terms():
    return ct_sequence(*octant_kernel(1), 59)


@pytest.fixture(scope="module")
def c2_terms():
    return ct_sequence(*sl3_kernel(3), 59)


class TestPRecurrence:
    """Test suite for the recurrence type."""

    def test_orders(self) -> None:
        """Test the orders of the built-in recurrences."""
        assert t3_recurrence().order == 3
        assert e3_recurrence().order == 2
        assert c2_recurrence().order == 2
        assert uniform_recurrence(2).order == 4

    def test_coefficients_at(self) -> None:
        """Test selected coefficient values at n = 0."""
        assert e3_recurrence().coefficients_at(0)[-1] == -56
        assert c2_recurrence().coefficients_at(0)[1] == -122
        assert t3_recurrence().coefficients_at(0) == [28, 150, 44, -72]

    def test_zero_leading_coefficient(self) -> None:
        """Test that the leading coefficient must not be the zero polynomial."""
        with pytest.raises(ValueError, match="zero leading coefficient"):
            PRecurrence((Poly(1, N), Poly(0, N)))

    def test_uniform_vanishing_coefficients(self) -> None:
        """Test that k = 0 and k = 1 kill the coefficient of a(n)."""
        assert uniform_recurrence(0).coefficients[0].is_zero
        assert uniform_recurrence(1).coefficients[0].is_zero
        assert not uniform_recurrence(2).coefficients[0].is_zero

    @pytest.mark.parametrize("k", [-1, 4])
    def test_uniform_out_of_range(self, k: int) -> None:
        """Test that k must lie in 0..3."""
        with pytest.raises(ValueError, match="must be in 0..3"):
            uniform_recurrence(k)

    def test_render(self) -> None:
        """Test the canonical text form."""
        assert (
            q_two_term_recurrence().render() == "(2*n + 4)*a(n) + (n + 6)*a(n+1) = 0"
        )

    def test_normalized(self) -> None:
        """Test that normalization removes content and fixes the sign."""
        r = PRecurrence.from_exprs([-4 * N, -6])
        assert r.normalized() == PRecurrence.from_exprs([2 * N, 3])

    def test_is_proportional(self) -> None:
        """Test proportionality over polynomials in n."""
        r = q_two_term_recurrence()
        scaled = PRecurrence(tuple(c * Poly((N + 1) * (N + 9), N) for c in r.coefficients))
        assert r.is_proportional(scaled)
        assert not r.is_proportional(PRecurrence.from_exprs([2 * (N + 2), N + 7]))
        assert not r.is_proportional(e3_recurrence())

    def test_factor_with_nonnegative_root_rejected(self) -> None:
        """Test that a factor vanishing at n = 1 is not a proportionality."""
        r = q_two_term_recurrence()
        spoiled = PRecurrence.from_exprs([2 * (N + 2) * (N - 1), (N + 6) * (N - 1)])
        assert not r.is_proportional(spoiled)
        assert not spoiled.is_proportional(r)

        terms = Sequence.of("x", [6, -4, 999])
        assert rec_verify(spoiled, terms)
        assert not rec_verify(r, terms)

    def test_inhomogeneous_at(self) -> None:
        """Test evaluation of the inhomogeneous term."""
        r = PRecurrence(
            (Poly(N + 1, N), Poly(1, N)), inhomogeneous=Poly(N**2 - 3, N, domain="ZZ")
        )
        assert [r.inhomogeneous_at(n) for n in range(4)] == [-3, -2, 1, 6]


class TestRecGenerate:
    """Test suite for rec_generate."""

    def test_t3(self) -> None:
        """Test the octant recurrence from 1, 0, 1."""
        generated = rec_generate(t3_recurrence(), [1, 0, 1], 9)
        assert generated.terms == reference("A059710").terms

    def test_e3(self) -> None:
        """Test the hesitating recurrence from 1, 1."""
        generated = rec_generate(e3_recurrence(), [1, 1], 9)
        assert generated.terms == reference("A108307").terms

    def test_c2(self) -> None:
        """Test the quadrant recurrence from 1, 3."""
        generated = rec_generate(c2_recurrence(), [1, 3], 5)
        assert generated.terms == reference("A216947", corrected=True).terms

    def test_matches_walks(self) -> None:
        """Test the octant recurrence against the walk DP."""
        generated = rec_generate(t3_recurrence(), [1, 0, 1], 40)
        assert generated.terms == count_excursions(octant_g2_model(), 40).terms

    def test_short_request(self) -> None:
        """Test that fewer terms than the order can be requested."""
        assert rec_generate(t3_recurrence(), [1, 0, 1], 1).terms == (1, 0)

    def test_wrong_initial_count(self) -> None:
        """Test that the number of initial terms must equal the order."""
        with pytest.raises(ValueError, match="needs 3 initial terms, got 2"):
            rec_generate(t3_recurrence(), [1, 0], 5)

    def test_inexact_division(self) -> None:
        """Test that an inexact division names the term."""
        r = PRecurrence.from_exprs([1, 2], name="halving")
        with pytest.raises(ArithmeticError, match="inexact division generating term 1"):
            rec_generate(r, [1], 3)

    def test_vanishing_leading_coefficient(self) -> None:
        """Test that a root of the leading coefficient is reported."""
        r = PRecurrence.from_exprs([0, N - 1], name="root-at-one")
        with pytest.raises(ArithmeticError, match="vanishes at n=1"):
            rec_generate(r, [5], 4)

    def test_zero_initial_forces_zero(self) -> None:
        """Test that f_0 = 0 forces the two-term relation to vanish."""
        generated = rec_generate(q_two_term_recurrence(), [0], 10)
        assert generated.terms == (0,) * 11


class TestRecVerify:
    """Test suite for rec_verify."""

    def test_reference_row(self) -> None:
        """Test the octant recurrence on the reference row."""
        assert rec_verify(t3_recurrence(), reference("A059710"))

    def test_perturbed_row(self) -> None:
        """Test that changing one term breaks the recurrence."""
        terms = list(reference("A059710").terms)
        terms[6] += 1
        perturbed = Sequence.of("perturbed", terms)
        assert not rec_verify(t3_recurrence(), perturbed)
        assert first_violation(t3_recurrence(), perturbed) == 3

    def test_transformed_walks(self) -> None:
        """Test the hesitating recurrence on transformed octant walks."""
        walks = count_excursions(octant_g2_model(), 39)
        assert rec_verify(e3_recurrence(), binomial_transform(walks))

    def test_printed_c2_row_fails(self) -> None:
        """Test that the printed A216947 row violates its recurrence."""
        assert first_violation(c2_recurrence(), reference("A216947")) == 1

    def test_too_short(self) -> None:
        """Test that at least order + 1 terms are needed."""
        with pytest.raises(ValueError, match="need at least 4"):
            rec_verify(t3_recurrence(), Sequence.of("short", [1, 0, 1]))

    def test_c2_long(self, c2_terms) -> None:
        """Test the quadrant recurrence on constant terms."""
        assert rec_verify(c2_recurrence(), c2_terms)


class TestResolveSigma:
    """Test suite for resolve_sigma."""

    def test_bijection(self) -> None:
        """Test the parameter map found by brute force."""
        rows = {
            tag: ct_sequence(*sl3_kernel(k), 19) for k, tag in enumerate(QUADRANT_TAGS)
        }
        assert resolve_sigma(rows) == {
            0: "A216947",
            1: "A001181",
            2: "A236408",
            3: "A151366",
        }

    def test_missing_row(self) -> None:
        """Test that a parameter with no matching row maps to None."""
        rows = {"A151366": ct_sequence(*sl3_kernel(0), 19)}
        sigma = resolve_sigma(rows)
        assert sigma[3] == "A151366"
        assert sigma[0] is None


class TestDiffOperator:
    """Test suite for operator algebra."""

    def test_commutation(self) -> None:
        """Test D t = t D + 1."""
        assert d_dt() * mul_t() == DiffOperator.from_exprs([1, T])

    def test_identity(self) -> None:
        """Test multiplication by the identity on both sides."""
        q = q_operator()
        assert q * identity() == q
        assert identity() * q == q

    def test_factorization(self) -> None:
        """Test Q L3 = L6."""
        assert q_operator() * l3_operator() == l6_operator()

    def test_order_zero_coefficient(self) -> None:
        """Test the order-0 coefficient of the product."""
        product = q_operator() * l3_operator()
        assert product.coefficients[0] == Poly(20160 * T**3 + 25200 * T**2 + 8064 * T, T)

    def test_orders(self) -> None:
        """Test the orders of the built-in operators."""
        assert l6_operator().order == 6
        assert l3_operator().order == 3
        assert q_operator().order == 3
        assert e_operator().order == 2
        assert c_operator().order == 4

    def test_trailing_zeros_trimmed(self) -> None:
        """Test that zero top coefficients do not count towards the order."""
        assert DiffOperator.from_exprs([1, 0, 0]).order == 0

    def test_associativity(self) -> None:
        """Test (AB)C = A(BC) on the built-ins."""
        operators = [q_operator(), l3_operator(), d_dt(), mul_t()]
        for a, b, c in itertools.product(operators, repeat=3):
            assert (a * b) * c == a * (b * c)

    def test_sum(self) -> None:
        """Test coefficient-wise addition."""
        assert d_dt() + mul_t() == DiffOperator.from_exprs([T, 1])

    def test_render(self) -> None:
        """Test the canonical text form."""
        assert d_dt().render() == "(1)*D^1"
        assert DiffOperator.from_exprs([0]).render() == "0"


class TestApplyOperator:
    """Test suite for apply_operator."""

    def test_derivative_of_constant(self) -> None:
        """Test D 1 = 0."""
        result = apply_operator(d_dt(), PowerSeries.constant(1, 10), 5)
        assert result == PowerSeries.constant(0, 5)

    def test_needs_enough_terms(self) -> None:
        """Test that the input must cover n_keep + order coefficients."""
        with pytest.raises(ValueError, match="series truncated at 10, need 13"):
            apply_operator(l3_operator(), PowerSeries.constant(1, 10), 10)

    def test_l3_annihilates_t3(self, t3_terms) -> None:
        """Test L3(T) = 0."""
        result = apply_operator(l3_operator(), PowerSeries.from_sequence(t3_terms), 50)
        assert result == PowerSeries.constant(0, 50)

    def test_l6_annihilates_t3(self, t3_terms) -> None:
        """Test L6(T) = 0."""
        result = apply_operator(l6_operator(), PowerSeries.from_sequence(t3_terms), 50)
        assert result == PowerSeries.constant(0, 50)

    def test_e_equation(self, e3_terms) -> None:
        """Test that L_E(E) is the constant 30."""
        result = apply_operator(e_operator(), PowerSeries.from_sequence(e3_terms), 50)
        assert result == PowerSeries.constant(E_EQUATION_RHS, 50)

    def test_c_operator(self, c2_terms) -> None:
        """Test that L_C annihilates the quadrant generating function."""
        result = apply_operator(c_operator(), PowerSeries.from_sequence(c2_terms), 50)
        assert result == PowerSeries.constant(0, 50)

    def test_l3_misses_e3(self, e3_terms) -> None:
        """Test that L3 does not annihilate a different series."""
        result = apply_operator(l3_operator(), PowerSeries.from_sequence(e3_terms), 50)
        assert result != PowerSeries.constant(0, 50)


class TestDiffToRec:
    """Test suite for diff_to_rec."""

    def test_derivative(self) -> None:
        """Test D -> (n + 1) a(n + 1) = 0."""
        assert diff_to_rec(d_dt()) == PRecurrence.from_exprs([0, N + 1])

    def test_order_zero(self) -> None:
        """Test t D - 1 -> (n - 1) a(n) = 0."""
        operator = DiffOperator.from_exprs([-1, T])
        assert diff_to_rec(operator) == PRecurrence.from_exprs([N - 1])

    def test_l3(self, t3_terms) -> None:
        """Test that the recurrence of L3 holds on T3."""
        recurrence = diff_to_rec(l3_operator())
        assert recurrence.order == 3
        assert recurrence.coefficients[-1].LC() > 0
        assert rec_verify(recurrence, t3_terms)

    def test_l3_is_t3_recurrence(self) -> None:
        """Test that the L3 recurrence is a polynomial multiple of the T3 one."""
        assert diff_to_rec(l3_operator()).is_proportional(t3_recurrence())

    def test_q(self) -> None:
        """Test the two-term relation of Q."""
        assert q_recurrence_check()
        assert diff_to_rec(q_operator()).order == 1

    def test_inhomogeneous_e_equation(self, e3_terms) -> None:
        """Test that D L_E gives a recurrence satisfied by E3."""
        recurrence = diff_to_rec(d_dt() * e_operator())
        assert rec_verify(recurrence, e3_terms)

    def test_c_operator(self, c2_terms) -> None:
        """Test the recurrence of L_C on the quadrant constant terms."""
        assert rec_verify(diff_to_rec(c_operator()), c2_terms)

    def test_zero_operator(self) -> None:
        """Test that the zero operator has no recurrence."""
        with pytest.raises(ValueError, match="zero operator"):
            diff_to_rec(DiffOperator.from_exprs([0]))
