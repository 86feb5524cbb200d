"""End-to-end acceptance suite.

Eight criteria: three golden classifications driven from the textual
equation syntax, then property suites for the telescoper, the summability
decision, the Riccati solver, synthesized reducible equations, and the
rational-solution solver.  All arithmetic is exact; the only tolerances
are the wall-clock ceilings on the golden tests.  Each criterion prints
one PASS line (visible with pytest -s; pytest -v shows the per-test
verdicts either way).
"""

import random
import time
from fractions import Fraction

from ddgalois.classify import (
    DeltaConstDet,
    DetTorsion,
    LinearDeltaOp,
    MonomialTorsion,
    Shape,
    UnipotentEmbedding,
    UnipotentFull,
    classify_full,
    erase_delta,
)
from ddgalois.cli import parse_equation
from ddgalois.fields import quadratic_field
from ddgalois.markers import Cardinality, Completeness, Empty, NoSolution
from ddgalois.polys import Poly
from ddgalois.ratfunc import RationalFunction as RF
from ddgalois.relations import (
    CasoratianLogDeriv,
    CasoratianPower,
    Hypergeometric,
    MonomialRational,
    ProductZero,
    UnipotentRelation,
    emit_relations,
    verify_certificate,
)
from ddgalois.riccati import solve_first_riccati, solve_second_riccati
from ddgalois.summation import (
    abramov_rational_solutions,
    is_summable,
    solve_telescoper,
)

x = RF.x()


def _report(number: int, label: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"[acceptance {number}] {label}: PASS{suffix}")


def _rand_poly(rng: random.Random, max_deg: int, lo: int = -6, hi: int = 6) -> Poly:
    """Random nonzero polynomial with integer coefficients in [lo, hi]."""
    deg = rng.randrange(max_deg + 1)
    coeffs = [Fraction(rng.randrange(lo, hi + 1)) for _ in range(deg + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(rng.choice([1, -1, 2, 3]))
    return Poly(tuple(coeffs))


def _monomial(d: int) -> Poly:
    return Poly(tuple([Fraction(0)] * d + [Fraction(1)]))


def _linear_system_consistent(rows, targets) -> bool:
    """Whether the exact linear system rows * t = targets has a solution.

    Gauss-Jordan over Fraction; used as the independent brute-force oracle
    in criteria 5 and 8.
    """
    m = [list(r) + [t] for r, t in zip(rows, targets)]
    cols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        sel = None
        for r in range(pivot_row, len(m)):
            if m[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        m[pivot_row], m[sel] = m[sel], m[pivot_row]
        inv = m[pivot_row][col]
        m[pivot_row] = [v / inv for v in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return all(
        row[cols] == 0
        for row in m
        if all(v == 0 for v in row[:cols])
    )


def _apply_operator(coeffs, y: RF) -> RF:
    acc = RF.zero()
    for j, c in enumerate(coeffs):
        acc = acc + c * y.shift(j)
    return acc


def test_criterion_1_unipotent_embedding_golden():
    """Triangular equation whose unipotent coordinate is delta of the
    diagonal one: exact descriptor, exact relation list, under 1 second."""
    t0 = time.perf_counter()
    eq = parse_equation("y(x+2)-(2*x+1)*y(x+1)+x^2*y(x)=0")
    result = classify_full(eq.a, eq.b)
    rels = emit_relations(result.G, result)
    verdicts = [verify_certificate(c, result) for c in rels]
    elapsed = time.perf_counter() - t0

    assert result.G.shape is Shape.TriangularReducible
    assert result.G.constraints == (
        MonomialTorsion(1, -1),
        UnipotentEmbedding(LinearDeltaOp((1,))),
    )
    assert result.embedding_g == RF.zero()
    assert result.H.constraints == (MonomialTorsion(1, -1), UnipotentFull())
    assert rels == [
        Hypergeometric("y1", x),
        Hypergeometric("y0", x),
        MonomialRational(1, -1, RF.one()),
        UnipotentRelation(LinearDeltaOp((1,)), RF.zero()),
    ]
    assert UnipotentRelation(LinearDeltaOp((1,)), RF.zero()) in rels
    assert all(verdicts)
    assert elapsed < 1.0, f"golden run took {elapsed:.3f}s (limit 1s)"
    _report(1, "unipotent embedding golden", f"{elapsed:.3f}s")


def test_criterion_2_interlacing_casoratian_golden():
    """Dihedral equation with constant-derivative determinant: exact
    descriptor, Casoratian witness 1/x, under 1 second."""
    t0 = time.perf_counter()
    eq = parse_equation("y(x+2)+((x+1)/(2*x))*y(x)=0")
    result = classify_full(eq.a, eq.b)
    rels = emit_relations(result.G, result)
    verdicts = [verify_certificate(c, result) for c in rels]
    elapsed = time.perf_counter() - t0

    assert result.G.shape is Shape.ImprimitiveDihedral
    assert result.G.constraints == (DeltaConstDet(),)
    assert result.G.components == 2
    assert ProductZero() in rels
    assert CasoratianLogDeriv(RF.one() / x) in rels
    assert all(verdicts)
    assert elapsed < 1.0, f"golden run took {elapsed:.3f}s (limit 1s)"
    _report(2, "interlacing Casoratian golden", f"{elapsed:.3f}s")


def test_criterion_3_full_sl2_golden():
    """Equation with no Riccati certificates at either step: the group is
    all of SL2, both solver runs certify emptiness, under 5 seconds."""
    t0 = time.perf_counter()
    eq = parse_equation("y(x+2)+x*y(x+1)+y(x)=0")
    result = classify_full(eq.a, eq.b)
    rels = emit_relations(result.G, result)
    verdicts = [verify_certificate(c, result) for c in rels]
    first = solve_first_riccati(eq.a, eq.b)
    second = solve_second_riccati(eq.a, eq.b)
    elapsed = time.perf_counter() - t0

    assert result.G.shape is Shape.Sl2Extension
    assert result.G.constraints == (DetTorsion(1),)
    assert result.H.constraints == (DetTorsion(1),)
    assert first.cardinality is Cardinality.Zero
    assert first.completeness is Completeness.Complete
    assert first.solutions == ()
    assert second.cardinality is Cardinality.Zero
    assert second.completeness is Completeness.Complete
    assert second.solutions == ()
    assert rels == [CasoratianPower(1, RF.one())]
    assert all(verdicts)
    assert elapsed < 5.0, f"golden run took {elapsed:.3f}s (limit 5s)"
    _report(3, "full SL2 golden", f"{elapsed:.3f}s")


def test_criterion_4_telescoper_roundtrip_and_obstructions():
    """200 planted telescoped inputs solve and replay exactly; 100 inputs
    with a planted nonzero orbit residue are refused.  Zero tolerance."""
    rng = random.Random(424242)
    for i in range(200):
        g = RF(_rand_poly(rng, 5), _rand_poly(rng, 5))
        f = g.shift(1) - g
        h = solve_telescoper(f)
        assert h is not NoSolution, f"round-trip instance {i} unsolved"
        assert h.shift(1) - h == f, f"round-trip instance {i} replay mismatch"
    for i in range(100):
        g = RF(_rand_poly(rng, 4), _rand_poly(rng, 4))
        c = Fraction(rng.choice([1, -1, 2, -2, 3, 5]), rng.choice([1, 2, 3]))
        r = rng.randrange(-5, 6)
        obstruction = RF(Poly.const(c), Poly((Fraction(-r), Fraction(1))))
        f = (g.shift(1) - g) + obstruction
        assert solve_telescoper(f) is NoSolution, f"obstructed instance {i} accepted"
    _report(4, "telescoper round-trip and obstructions", "200 solved + 100 refused")


def test_criterion_5_summability_matches_undetermined_coefficients():
    """The summability decision agrees with a brute-force undetermined-
    coefficients oracle on 100 rational functions with integer poles in
    [-3, 3] of multiplicity at most 2.  100% agreement required.

    Oracle: a solution of the telescoping identity, when one exists for
    such an input, can be taken with integer poles inside [-2, 3] of no
    higher multiplicity, so an ansatz numerator over the fixed denominator
    prod_{k=-6..6} (x-k)^M (M the maximal input multiplicity) is complete;
    solvability of the resulting exact linear system decides summability.
    """
    rng = random.Random(515151)
    window = range(-6, 7)
    summable_count = 0
    for i in range(100):
        if i % 2 == 0:
            npoles = rng.randrange(1, 4)
            g = RF.zero()
            for _ in range(npoles):
                k = rng.randrange(-2, 4)
                j = rng.randrange(1, 3)
                c = Fraction(rng.randrange(-5, 6))
                if c == 0:
                    c = Fraction(1)
                g = g + RF(Poly.const(c), Poly((Fraction(-k), Fraction(1))) ** j)
            f = g.shift(1) - g
        else:
            poles = rng.sample(range(-3, 4), rng.randrange(2, 5))
            den = Poly.one()
            for k in poles:
                den = den * Poly((Fraction(-k), Fraction(1))) ** rng.randrange(1, 3)
            num = _rand_poly(rng, den.degree - 1)
            f = RF(num, den)

        library_answer = is_summable(f)
        if f.is_zero():
            oracle_answer = True
        else:
            mult = max((j for _, j, _ in f.partial_fractions()[1]), default=1)
            ansatz_den = Poly.one()
            for k in window:
                ansatz_den = ansatz_den * Poly((Fraction(-k), Fraction(1))) ** mult
            shifted_den = ansatz_den.shift(1)
            p, q = f.num, f.den
            images = [
                _monomial(d).shift(1) * ansatz_den * q - _monomial(d) * shifted_den * q
                for d in range(ansatz_den.degree)
            ]
            target = p * ansatz_den * shifted_den
            top = max([img.degree for img in images] + [target.degree])
            rows = [[img.coeff(d) for img in images] for d in range(top + 1)]
            targets = [target.coeff(d) for d in range(top + 1)]
            oracle_answer = _linear_system_consistent(rows, targets)
        assert library_answer == oracle_answer, (
            f"instance {i}: library says {library_answer}, oracle says "
            f"{oracle_answer} for {f}"
        )
        summable_count += library_answer
    _report(5, "summability oracle agreement", f"100/100, {summable_count} summable")


def test_criterion_6_riccati_certificates_and_cardinalities():
    """Every certificate over a 10-equation corpus satisfies its Riccati
    equation exactly; cardinality classes match the frozen expectations."""
    corpus = [
        (RF.of(-1), RF.of(-1), quadratic_field(5), Cardinality.Two),
        (RF.of(-2), RF.one(), None, Cardinality.ThreeOrMore),
        (-(2 * x + 1), x * x, None, Cardinality.One),
        (RF.zero(), (x + 1) / (2 * x), None, Cardinality.Zero),
        (x, RF.one(), None, Cardinality.Zero),
        (RF.of(-5), RF.of(6), None, Cardinality.Two),
        (-(3 * x + 1), 2 * x * x, None, Cardinality.One),
        (RF.one(), x, None, Cardinality.Zero),
        (RF.zero(), -(x + 1) / x, None, Cardinality.Zero),
        (x, x, None, Cardinality.One),
    ]
    checked = 0
    for idx, (a, b, field, expected) in enumerate(corpus):
        result = solve_first_riccati(a, b, extra_field=field)
        assert result.cardinality is expected, (
            f"equation {idx}: expected {expected.value}, "
            f"got {result.cardinality.value}"
        )
        assert result.completeness is Completeness.Complete, f"equation {idx}"
        for u in result.solutions:
            residual = u * u.shift(1) + a * u + b
            assert residual.is_zero(), (
                f"equation {idx}: certificate {u} leaves residual {residual}"
            )
            checked += 1
    _report(6, "Riccati corpus", f"10 equations, {checked} certificates substituted")


def test_criterion_7_reducible_synthesis_invariants():
    """50 equations synthesized from planted first-order factorizations:
    the unipotent summary is always one of the two legal kinds, and
    erasing the derivative constraints from G always reproduces H."""
    rng = random.Random(777)

    def planted_poly() -> Poly:
        deg = rng.randrange(0, 3)
        coeffs = [Fraction(rng.randrange(-4, 5)) for _ in range(deg + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = Fraction(rng.choice([1, -1, 2]))
        return Poly(tuple(coeffs))

    branches: dict = {}
    for i in range(50):
        u = RF(planted_poly(), planted_poly())
        w = RF(planted_poly(), planted_poly())
        a = -(u.shift(1) + w)
        b = w * u
        result = classify_full(a, b)
        branches[result.branch] = branches.get(result.branch, 0) + 1
        unipotent = [
            c
            for c in result.G.constraints
            if isinstance(c, (UnipotentFull, UnipotentEmbedding))
        ]
        foreign = [
            c
            for c in result.G.constraints
            if "Unipotent" in type(c).__name__
            and not isinstance(c, (UnipotentFull, UnipotentEmbedding))
        ]
        assert not foreign, f"instance {i}: unexpected unipotent constraint {foreign}"
        if result.branch == "reducible":
            assert len(unipotent) == 1, (
                f"instance {i}: expected exactly one unipotent constraint, "
                f"got {result.G.constraints}"
            )
        assert erase_delta(result.G) == result.H, f"instance {i}: erasure mismatch"
    assert branches == {"reducible": 50}, branches
    _report(7, "reducible synthesis invariants", "50/50 reducible, erasure exact")


def test_criterion_8_abramov_substitution_and_empty_crosscheck():
    """50 randomized inhomogeneous equations of order 1 or 2: returned
    rational solutions verify by substitution; Empty outcomes are
    cross-checked against a degree-at-most-10 polynomial ansatz."""
    rng = random.Random(31337)
    planted = solved = empty = 0
    for i in range(50):
        order = rng.choice([1, 2])
        if i % 2 == 0:
            coeffs = [
                RF(_rand_poly(rng, 2), _rand_poly(rng, 1)) for _ in range(order + 1)
            ]
            y0 = RF(_rand_poly(rng, 2), _rand_poly(rng, 2))
            rhs = _apply_operator(coeffs, y0)
            result = abramov_rational_solutions(coeffs, rhs)
            assert result is not Empty, f"instance {i}: planted solution missed"
            planted += 1
            assert _apply_operator(coeffs, result.particular) == rhs, f"instance {i}"
            for vec in result.basis:
                assert _apply_operator(coeffs, vec).is_zero(), f"instance {i}"
        else:
            coeffs = [RF.of(_rand_poly(rng, 2)) for _ in range(order + 1)]
            rhs = RF.of(_rand_poly(rng, 3))
            result = abramov_rational_solutions(coeffs, rhs)
            if result is Empty:
                empty += 1
                images = []
                for d in range(11):
                    img = Poly.zero()
                    for j, c in enumerate(coeffs):
                        img = img + c.num * _monomial(d).shift(j)
                    images.append(img)
                target = rhs.num
                top = max([img.degree for img in images] + [target.degree])
                rows = [[img.coeff(d) for img in images] for d in range(top + 1)]
                targets = [target.coeff(d) for d in range(top + 1)]
                assert not _linear_system_consistent(rows, targets), (
                    f"instance {i}: Empty claim contradicted by a polynomial "
                    f"solution of degree <= 10"
                )
            else:
                solved += 1
                assert _apply_operator(coeffs, result.particular) == rhs, f"instance {i}"
                for vec in result.basis:
                    assert _apply_operator(coeffs, vec).is_zero(), f"instance {i}"
    _report(
        8,
        "rational-solution suite",
        f"{planted} planted verified, {solved} found, {empty} Empty cross-checked",
    )
