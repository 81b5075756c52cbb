"""Expression grammar, printing round trips, and numeric evaluation."""

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from trigsum.expr import (
    DomainError, Expr, FUNCTIONS, PI, ParseError, UnboundSymbolError,
    eval_complex, eval_real, fold, func, mul, neg,
    parse_expr, rational, symbol, to_text,
)


class TestParse:
    def test_function_over_product(self):
        e = parse_expr("exp(b*x)")
        assert e.kind == "call" and e.value == "exp"
        inner = e.args[0]
        assert inner.kind == "mul"
        assert inner.args[0] == symbol("b") and inner.args[1] == symbol("x")

    def test_rational_plus_pi_power(self):
        e = parse_expr("1/2 + pi^2")
        assert e.kind == "add"
        assert e.args[0] == rational(1, 2)
        assert e.args[1].kind == "pow" and e.args[1].args[0] == PI
        assert e.args[1].value == 2

    def test_nested_quotient_in_arccot(self):
        e = parse_expr("arccot((1-cos(x))/sin(x))")
        assert e.kind == "call" and e.value == "arccot"
        assert e.args[0].kind == "div"

    def test_precedence_unary_minus_below_power(self):
        # ^ binds tighter than unary minus
        e = parse_expr("-x^2")
        assert e.kind == "neg"
        assert e.args[0].kind == "pow"

    def test_whitespace_insensitive(self):
        assert parse_expr(" 1 / 2 + pi ^ 2 ") == parse_expr("1/2+pi^2")

    def test_rational_literal_normalizes(self):
        assert parse_expr("6/4") == rational(3, 2)

    def test_syntax_error_with_position(self):
        with pytest.raises(ParseError) as err:
            parse_expr("1 + @")
        assert err.value.pos == 4

    def test_unknown_function(self):
        with pytest.raises(ParseError):
            parse_expr("sinc(x)")

    def test_trailing_input(self):
        with pytest.raises(ParseError):
            parse_expr("1 + 2 )")


# canonical parser-image trees: rational leaves are non-negative (negative
# literals live behind the factor-level sign fold) and neg never wraps a
# bare rational
_leaf = st.one_of(
    st.integers(0, 9).map(rational),
    st.fractions(min_value=0, max_value=5).map(rational),
    st.sampled_from("xyzbch").map(symbol),
    st.just(PI),
)


def _combine(children):
    return st.one_of(
        st.tuples(children, children).map(lambda ab: Expr("add", ab)),
        st.tuples(children, children).map(lambda ab: Expr("mul", ab)),
        st.tuples(children, children).filter(
            lambda ab: not (ab[1].kind == "rat" and ab[1].value == 0)).map(
            lambda ab: Expr("div", ab)),
        children.filter(lambda a: a.kind != "rat").map(lambda a: Expr("neg", (a,))),
        st.tuples(children, st.integers(-3, 5)).map(
            lambda an: Expr("pow", (an[0],), an[1])),
        st.tuples(st.sampled_from(FUNCTIONS), children).map(
            lambda fa: Expr("call", (fa[1],), fa[0])),
    )


_exprs = st.recursive(_leaf, _combine, max_leaves=25)


class TestRoundTrip:
    @given(_exprs)
    @settings(max_examples=300, deadline=None)
    def test_print_parse_identity(self, e):
        assert parse_expr(to_text(e)) == e

    def test_specific_shapes(self):
        for text in ["a - b + c", "a - (b + c)", "-(x*y)", "x^-2",
                     "(a + b)^3", "1/2/x", "2/x/3", "sqrt(3)*pi/9",
                     "arccot(tan(pi*x/(2*c)))"]:
            e = parse_expr(text)
            assert parse_expr(to_text(e)) == e


class TestEvalReal:
    def test_exp_zero(self):
        assert eval_real(parse_expr("exp(x)"), {"x": 0}, 20) == 1

    def test_arccot_symmetry(self):
        with mp.workdps(30):
            v = eval_real(parse_expr("arccot(t)"), {"t": 1}, 30)
            assert abs(v - mp.pi / 4) < mp.mpf(10) ** -28

    def test_arccot_range_zero_pi(self):
        # arccot(-t) = pi - arccot(t)
        with mp.workdps(30):
            plus = eval_real(parse_expr("arccot(t)"), {"t": 2}, 30)
            minus = eval_real(parse_expr("arccot(t)"), {"t": -2}, 30)
            assert abs(minus - (mp.pi - plus)) < mp.mpf(10) ** -28
            assert 0 < plus < mp.pi and 0 < minus < mp.pi

    def test_log_sine_kernel(self):
        e = parse_expr("ln(2*sin(pi*x/(2*c)))")
        with mp.workdps(30):
            v = eval_real(e, {"x": 1, "c": 1}, 30)
            assert abs(v - mp.ln(2)) < mp.mpf(10) ** -28

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            eval_real(parse_expr("ln(x)"), {"x": -1})
        with pytest.raises(DomainError):
            eval_real(parse_expr("sqrt(x)"), {"x": -2})

    def test_unbound_symbol(self):
        with pytest.raises(UnboundSymbolError):
            eval_real(parse_expr("x + y"), {"x": 1})

    def test_precision_monotone(self):
        # doubling digits never worsens the error against a 4x reference
        exprs = [parse_expr(t) for t in
                 ("exp(x)*sin(3*x)", "ln(1+x^2)/(1+x)", "arctan(x)^3")]
        xs = [0.3, 0.7, 1.9]
        for e in exprs:
            for x in xs:
                with mp.workdps(80):
                    ref = eval_real(e, {"x": x}, 80)
                    err10 = abs(eval_real(e, {"x": x}, 10) - ref)
                    err20 = abs(eval_real(e, {"x": x}, 20) - ref)
                    assert err20 <= err10 + mp.mpf(10) ** -78


class TestEvalComplex:
    def test_principal_log(self):
        with mp.workdps(30):
            v = eval_complex(parse_expr("ln(z)"), {"z": mp.mpc(1, 1)}, 30)
            assert abs(v.real - mp.ln(2) / 2) < mp.mpf(10) ** -28
            assert abs(v.imag - mp.pi / 4) < mp.mpf(10) ** -28

    def test_euler_identity(self):
        with mp.workdps(30):
            v = eval_complex(parse_expr("exp(z)"), {"z": mp.mpc(0, mp.pi)}, 30)
            assert abs(v.real + 1) < mp.mpf(10) ** -28
            assert abs(v.imag) < mp.mpf(10) ** -28

    def test_tan_matches_closed_parts(self):
        # Re/Im of tan at x+ih against the closed cos/sin parts
        with mp.workdps(30):
            x, h = mp.mpf("0.3"), mp.mpf("0.2")
            v = eval_complex(parse_expr("tan(z)"), {"z": mp.mpc(x, h)}, 30)
            den = mp.cosh(2 * h) + mp.cos(2 * x)
            assert abs(v.real - mp.sin(2 * x) / den) < 1e-12
            assert abs(v.imag - mp.sinh(2 * h) / den) < 1e-12

    def test_real_complex_consistency(self):
        for text in ("sin(x)*exp(x)", "ln(1+x^2)", "cosh(x)/(2+cos(x))"):
            e = parse_expr(text)
            for x in (0.25, 1.5):
                with mp.workdps(25):
                    rv = eval_real(e, {"x": x}, 25)
                    cv = eval_complex(e, {"x": mp.mpc(x, 0)}, 25)
                    assert cv.imag == 0
                    assert rv == cv.real


class TestFold:
    def test_rational_arithmetic(self):
        assert fold(parse_expr("1/2 + 1/3")) == rational(5, 6)
        assert fold(parse_expr("(2/3)^2")) == rational(4, 9)

    def test_trig_parity(self):
        x = symbol("x")
        assert func("cos", neg(x)) == func("cos", x)
        assert func("sin", neg(x)) == neg(func("sin", x))
        assert func("sin", mul(rational(-2), x)) == neg(func("sin", mul(rational(2), x)))

    def test_exact_calls(self):
        assert func("exp", rational(0)) == rational(1)
        assert func("sqrt", rational(9, 4)) == rational(3, 2)
        assert to_text(func("arccot", rational(0))) == "1/2*pi"
