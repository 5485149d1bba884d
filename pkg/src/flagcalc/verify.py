"""Self-verification suites: every structural identity the engine relies on.

Each suite returns a list of CheckResult; a suite passes when every check
does.  Counterexamples are rendered in class-expression syntax so they can be
replayed through the command line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .charring import (LaurentPolynomial, SymPolynomial, isobaric_dd,
                       weyl_act_lp, weyl_act_sym)
from .cohomology import CohClass, bgg, chevalley_coh, si_coh
from .expressions import kclass_str, laurent_str
from .ktheory import (KClass, demazure_k, expand, line_bundle_mult,
                      line_bundle_mult_word, localized_demazure, restrict,
                      restrict_basis, si_k, sln_si_leading)
from .motivic import (dl_op, fixed_point_class, ideal_class, mc, mc_along_word,
                      specialize_y)
from .rootsys import RootSystem
from .weyl import (WeylElement, all_elements, all_reduced_words, bruhat_leq,
                   identity, simple_reflection, support_set_C)

SUITES = ("involution", "braid", "chevalley", "oracle", "theorem41", "sln",
          "motivic")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def braid_order(rs: RootSystem, i: int, j: int) -> int:
    """Order of s_i s_j, read off the Cartan matrix."""
    return {0: 2, 1: 3, 2: 4, 3: 6}[rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]]


def _gens(rs: RootSystem) -> range:
    return range(1, rs.rank + 1)


def _random_laurent(rs: RootSystem, rng: random.Random,
                    with_y: bool = True) -> LaurentPolynomial:
    out = LaurentPolynomial.zero()
    for _ in range(rng.randint(1, 4)):
        lam = tuple(rng.randint(-2, 2) for _ in range(rs.rank))
        ydeg = rng.randint(0, 2) if with_y else 0
        coeff = (0,) * ydeg + (rng.randint(-3, 3),)
        out += LaurentPolynomial.exp(lam, coeff if coeff[-1] else (1,))
    return out


def _random_sym(rs: RootSystem, rng: random.Random) -> SymPolynomial:
    out = SymPolynomial.zero()
    for _ in range(rng.randint(1, 4)):
        e = tuple(rng.randint(0, 2) for _ in range(rs.rank))
        out += SymPolynomial({e: rng.choice([-2, -1, 1, 2, 3])})
    return out


def _random_kclass(rs: RootSystem, rng: random.Random) -> KClass:
    elements = all_elements(rs)
    out = KClass(rs)
    for _ in range(rng.randint(1, 3)):
        w = rng.choice(elements)
        out += KClass(rs, {w: _random_laurent(rs, rng)})
    return out


# -- involution and braid suites -------------------------------------------------


def suite_involution(rs: RootSystem) -> list[CheckResult]:
    out = []
    elements = all_elements(rs)
    for i in _gens(rs):
        bad = ""
        for w in elements:
            u = KClass.basis(rs, w)
            if si_k(i, si_k(i, u)) != u:
                bad = f"s_{i} twice moved O[{','.join(map(str, w.word))}]"
                break
        out.append(CheckResult(f"K involution s_{i}", not bad, bad))
    for i in _gens(rs):
        bad = ""
        for w in elements:
            c = CohClass.basis(rs, w)
            if si_coh(i, si_coh(i, c)) != c:
                bad = f"s_{i} twice moved X[{','.join(map(str, w.word))}]"
                break
        out.append(CheckResult(f"coh involution s_{i}", not bad, bad))
    for i in _gens(rs):
        bad = ""
        for w in elements:
            for cls in (ideal_class(rs, w), fixed_point_class(rs, w)):
                if si_k(i, si_k(i, cls)) != cls:
                    bad = f"s_{i} twice moved {kclass_str(cls)}"
                    break
            if bad:
                break
        out.append(CheckResult(f"ideal/fixed involution s_{i}", not bad, bad))
    return out


def suite_braid(rs: RootSystem) -> list[CheckResult]:
    out = []
    elements = all_elements(rs)
    for i in _gens(rs):
        for j in _gens(rs):
            if i >= j:
                continue
            m = braid_order(rs, i, j)
            bad = ""
            for w in elements:
                u = KClass.basis(rs, w)
                x = u
                for _ in range(m):
                    x = si_k(i, si_k(j, x))
                if x != u:
                    bad = f"(s_{i} s_{j})^{m} moved O[{','.join(map(str, w.word))}]"
                    break
            out.append(CheckResult(f"K braid (s_{i} s_{j})^{m}", not bad, bad))
            bad = ""
            for w in elements:
                c = CohClass.basis(rs, w)
                x = c
                for _ in range(m):
                    x = si_coh(i, si_coh(j, x))
                if x != c:
                    bad = f"(s_{i} s_{j})^{m} moved X[{','.join(map(str, w.word))}]"
                    break
            out.append(CheckResult(f"coh braid (s_{i} s_{j})^{m}", not bad, bad))
    return out


# -- operator and Chevalley identities --------------------------------------------


def suite_chevalley(rs: RootSystem) -> list[CheckResult]:
    out = []
    rng = random.Random(20240 + rs.rank)
    one = LaurentPolynomial.one(rs.rank)
    # defining quotient of the isobaric divided difference
    bad = ""
    for _ in range(100):
        f = _random_laurent(rs, rng)
        for i in _gens(rs):
            alpha = rs.simple_root(i).weight
            lhs = (one - LaurentPolynomial.exp(alpha)) * isobaric_dd(rs, i, f)
            rhs = f - LaurentPolynomial.exp(alpha) * weyl_act_lp(
                simple_reflection(rs, i), f)
            if lhs != rhs:
                bad = f"quotient identity failed at {laurent_str(rs, f)}"
                break
        if bad:
            break
    out.append(CheckResult("isobaric divided difference quotient", not bad, bad))
    # idempotence of the isobaric divided difference
    bad = ""
    for _ in range(50):
        f = _random_laurent(rs, rng)
        for i in _gens(rs):
            g = isobaric_dd(rs, i, f)
            if isobaric_dd(rs, i, g) != g:
                bad = f"not idempotent at {laurent_str(rs, f)}"
                break
        if bad:
            break
    out.append(CheckResult("isobaric divided difference idempotent", not bad, bad))
    # defining quotient of the cohomological divided difference
    from .charring import divided_diff_coh

    bad = ""
    for _ in range(100):
        f = _random_sym(rs, rng)
        for i in _gens(rs):
            alpha = SymPolynomial.linear(rs.simple_root(i).weight)
            lhs = (-alpha) * divided_diff_coh(rs, i, f)
            rhs = f - weyl_act_sym(simple_reflection(rs, i), f)
            if lhs != rhs:
                bad = "divided difference quotient failed"
                break
        if bad:
            break
    out.append(CheckResult("divided difference quotient", not bad, bad))
    # the two rank-one Chevalley identities, by enumeration and by the oracle
    if (rs.letter, rs.rank) == ("A", 1):
        e = identity(rs)
        s1 = simple_reflection(rs, 1)
        alpha = rs.simple_root(1).weight
        ea = LaurentPolynomial.exp(alpha)
        ena = LaurentPolynomial.exp(tuple(-c for c in alpha))
        expected_id = KClass(rs, {e: ea})
        expected_s1 = KClass(rs, {s1: ena, e: -(one + ena)})
        ok = (line_bundle_mult(alpha, KClass.basis(rs, e)) == expected_id
              and line_bundle_mult(alpha, KClass.basis(rs, s1)) == expected_s1)
        out.append(CheckResult("rank-1 Chevalley products (enumeration)", ok,
                               "" if ok else "enumeration route disagrees"))
        oracle_ok = True
        for u, expected in ((KClass.basis(rs, e), expected_id),
                            (KClass.basis(rs, s1), expected_s1)):
            ru = restrict(u)
            product = ru.map_components(
                lambda w, val: LaurentPolynomial.exp(w.apply(alpha)) * val)
            if expand(product) != expected:
                oracle_ok = False
        out.append(CheckResult("rank-1 Chevalley products (oracle)", oracle_ok,
                               "" if oracle_ok else "oracle route disagrees"))
    # word-independence of the Chevalley enumeration
    if len(all_elements(rs)) <= 48:
        bad = ""
        weights = [rs.simple_root(i).weight for i in _gens(rs)]
        weights.append(rs.highest_root.weight)
        for w in all_elements(rs):
            words = all_reduced_words(w)
            for alpha in weights:
                ref = line_bundle_mult_word(rs, alpha, words[0])
                if any(line_bundle_mult_word(rs, alpha, wd) != ref
                       for wd in words[1:]):
                    bad = f"word-dependent product at O[{','.join(map(str, w.word))}]"
                    break
            if bad:
                break
        out.append(CheckResult("Chevalley word-independence", not bad, bad))
    # cohomological Chevalley raises degree by one on basis classes
    bad = ""
    npos = len(rs.positive_roots)
    for w in all_elements(rs):
        c = chevalley_coh(rs, rs.simple_root(1).weight, CohClass.basis(rs, w))
        for v, f in c.terms.items():
            degrees = {sum(e) for e in f.terms}
            if degrees != {(npos - w.length) + 1 - (npos - v.length)}:
                bad = f"degree jump at X[{','.join(map(str, w.word))}]"
                break
        if bad:
            break
    out.append(CheckResult("Chevalley degree raise", not bad, bad))
    return out


# -- localization oracle ------------------------------------------------------------


def suite_oracle(rs: RootSystem) -> list[CheckResult]:
    out = []
    elements = all_elements(rs)
    weights = []
    for i in _gens(rs):
        alpha = rs.simple_root(i).weight
        weights += [alpha, tuple(-c for c in alpha)]
    theta = rs.highest_root.weight
    weights += [theta, tuple(-c for c in theta)]
    bad = ""
    for w in elements:
        u = KClass.basis(rs, w)
        ru = restrict(u)
        for alpha in weights:
            lhs = restrict(line_bundle_mult(alpha, u))
            rhs = ru.map_components(
                lambda x, val, a=alpha: LaurentPolynomial.exp(x.apply(a)) * val)
            if lhs != rhs:
                bad = f"line bundle vs oracle at O[{','.join(map(str, w.word))}]"
                break
        if bad:
            break
    out.append(CheckResult("oracle: line bundle action", not bad, bad))
    bad = ""
    for w in elements:
        u = KClass.basis(rs, w)
        for i in _gens(rs):
            if restrict(demazure_k(i, u)) != localized_demazure(i, restrict(u)):
                bad = f"Demazure vs oracle at O[{','.join(map(str, w.word))}], i={i}"
                break
        if bad:
            break
    out.append(CheckResult("oracle: Demazure action", not bad, bad))
    bad = ""
    for w in elements:
        rho = restrict_basis(rs, w)
        if not rho.at(w):
            bad = f"zero diagonal at {w!r}"
            break
        for x in elements:
            if rho.at(x) and not bruhat_leq(x, w):
                bad = f"support outside the Bruhat interval of {w!r}"
                break
        if bad:
            break
    out.append(CheckResult("oracle: Bruhat triangularity", not bad, bad))
    rng = random.Random(777 + rs.rank)
    bad = ""
    for _ in range(10):
        u = _random_kclass(rs, rng)
        if expand(restrict(u)) != u:
            bad = f"round trip failed at {kclass_str(u)}"
            break
    out.append(CheckResult("oracle: expand/restrict round trip", not bad, bad))
    bad = ""
    for i in _gens(rs):
        for w in elements:
            u = KClass.basis(rs, w)
            if demazure_k(i, demazure_k(i, u)) != demazure_k(i, u):
                bad = f"Demazure not idempotent at O[{','.join(map(str, w.word))}]"
                break
            c = CohClass.basis(rs, w)
            if bgg(i, bgg(i, c)):
                bad = f"BGG square nonzero at X[{','.join(map(str, w.word))}]"
                break
        if bad:
            break
    out.append(CheckResult("Demazure idempotent, BGG square zero", not bad, bad))
    return out


# -- structure of the reflection action ---------------------------------------------


def suite_theorem41(rs: RootSystem) -> list[CheckResult]:
    out = []
    from .weyl import reflection

    bad_support = ""
    bad_lead = ""
    bad_nonzero = ""
    one = LaurentPolynomial.one(rs.rank)
    for w in all_elements(rs):
        for i in _gens(rs):
            if not w.is_right_ascent(i):
                continue
            img = si_k(i, KClass.basis(rs, w))
            ws_i = w.times_simple(i)
            cset = support_set_C(w, i)
            allowed = {ws_i * reflection(rs, beta) for beta in cset} | {w}
            level = {v for v in img.support() if v.length == w.length}
            if not level <= allowed:
                bad_support = bad_support or f"support leak at {w!r}, i={i}"
            lead = img.coeff(ws_i)
            expected = one - LaurentPolynomial.exp(w.apply(rs.simple_root(i).weight))
            if lead != expected:
                bad_lead = bad_lead or f"leading coefficient at {w!r}, i={i}"
            for beta in cset:
                if not img.coeff(ws_i * reflection(rs, beta)):
                    bad_nonzero = bad_nonzero or f"vanishing C_i coefficient at {w!r}"
    out.append(CheckResult("length-l(w) support containment", not bad_support,
                           bad_support))
    out.append(CheckResult("leading coefficient 1 - e^{w(alpha_i)}", not bad_lead,
                           bad_lead))
    out.append(CheckResult("C_i coefficients nonzero", not bad_nonzero, bad_nonzero))
    return out


def suite_sln(rs: RootSystem) -> list[CheckResult]:
    if rs.letter != "A":
        return [CheckResult("type A closed leading form", False,
                            f"suite requires type A, got {rs.letter}{rs.rank}")]
    bad = ""
    for w in all_elements(rs):
        for i in _gens(rs):
            if not w.is_right_ascent(i):
                continue
            img = si_k(i, KClass.basis(rs, w)).truncate_length(w.length)
            if img != sln_si_leading(w, i):
                bad = f"closed form mismatch at {w!r}, i={i}"
                break
        if bad:
            break
    return [CheckResult("type A closed leading form", not bad, bad)]


# -- motivic classes -----------------------------------------------------------------


def suite_motivic(rs: RootSystem) -> list[CheckResult]:
    out = []
    elements = all_elements(rs)
    y = LaurentPolynomial.y(rs.rank)
    one_plus_y = LaurentPolynomial.one(rs.rank) + y
    bad = ""
    for w in elements:
        u = KClass.basis(rs, w)
        for i in _gens(rs):
            tu = dl_op(i, u)
            if dl_op(i, tu) != tu.scale(one_plus_y).scale(
                    LaurentPolynomial.const(rs.rank, -1)) - u.scale(y):
                bad = f"Hecke relation failed at O[{','.join(map(str, w.word))}]"
                break
        if bad:
            break
    out.append(CheckResult("Hecke quadratic relation", not bad, bad))
    if len(elements) <= 48:
        bad = ""
        for w in elements:
            ref = mc(rs, w)
            if any(mc_along_word(rs, wd) != ref for wd in all_reduced_words(w)):
                bad = f"word-dependent motivic class at {w!r}"
                break
        out.append(CheckResult("motivic class word-independence", not bad, bad))
    bad = ""
    for w in elements:
        support = restrict(fixed_point_class(rs, w))
        if set(support.values) != {w}:
            bad = f"fixed-point class of {w!r} not supported at its point"
            break
    out.append(CheckResult("y=-1 classes restrict to one point", not bad, bad))
    bad = ""
    for w in elements:
        total = KClass.zero(rs)
        for v in elements:
            if bruhat_leq(v, w):
                total += ideal_class(rs, v)
        if total != KClass.basis(rs, w):
            bad = f"ideal telescoping failed at {w!r}"
            break
    out.append(CheckResult("y=0 classes telescope to [O_w]", not bad, bad))
    bad = ""
    for w in elements:
        iw = ideal_class(rs, w)
        for i in _gens(rs):
            if w.is_right_ascent(i):
                if demazure_k(i, iw) - iw != ideal_class(rs, w.times_simple(i)):
                    bad = f"ideal ascent rule failed at {w!r}, i={i}"
                    break
        if bad:
            break
    out.append(CheckResult("ideal ascent rule", not bad, bad))
    bad = ""
    for w in elements:
        iw = ideal_class(rs, w)
        for i in _gens(rs):
            neg_alpha = tuple(-c for c in rs.simple_root(i).weight)
            if w.is_right_ascent(i):
                ws = ideal_class(rs, w.times_simple(i))
                expected = ws - line_bundle_mult(neg_alpha, ws) + iw
            else:
                expected = line_bundle_mult(neg_alpha, iw)
            if si_k(i, iw) != expected:
                bad = f"ideal two-branch action failed at {w!r}, i={i}"
                break
        if bad:
            break
    out.append(CheckResult("ideal basis closed action", not bad, bad))
    bad = ""
    for w in elements:
        fw = fixed_point_class(rs, w)
        for i in _gens(rs):
            target = fixed_point_class(rs, w.times_simple(i))
            coeff = -LaurentPolynomial.exp(w.apply(rs.simple_root(i).weight))
            if si_k(i, fw) != target.scale(coeff):
                bad = f"fixed basis action failed at {w!r}, i={i}"
                break
        if bad:
            break
    out.append(CheckResult("fixed basis signed monomial action", not bad, bad))
    return out


_SUITE_FNS = {
    "involution": suite_involution,
    "braid": suite_braid,
    "chevalley": suite_chevalley,
    "oracle": suite_oracle,
    "theorem41": suite_theorem41,
    "sln": suite_sln,
    "motivic": suite_motivic,
}


def run_suite(rs: RootSystem, suite: str) -> list[CheckResult]:
    if suite == "all":
        out = []
        for name in SUITES:
            if name == "sln" and rs.letter != "A":
                continue
            out.extend(_SUITE_FNS[name](rs))
        return out
    return _SUITE_FNS[suite](rs)
