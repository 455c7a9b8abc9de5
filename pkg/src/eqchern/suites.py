"""Verification suites.  Each returns a report dictionary of plain strings and booleans."""

from __future__ import annotations

import logging
from fractions import Fraction
from math import factorial
from typing import Any, Callable

from .coeff import AuxSeries, QSeries, RatFunc, euler_function, var
from .fock import (FockVector, NormalOrderedOp, apply_mode, compose, expand_in_monomials,
                   number_operator)
from .partitions import GeneralizedPartition, Partition, partitions_of, partitions_up_to

log = logging.getLogger(__name__)

GP = GeneralizedPartition


def item(name: str, ok: bool | None, got: Any = "", expected: Any = None) -> dict:
    return {"name": name, "expected": None if expected is None else str(expected),
            "got": str(got), "pass": ok}


def report(suite: str, params: dict, items: list[dict]) -> dict:
    ok = all(i["pass"] for i in items if i["pass"] is not None)
    return {"suite": suite, "params": params, "status": "PASS" if ok else "FAIL", "items": items}


# ---------------------------------------------------------------------------


def heisenberg(degmax: int = 8, modes: int = 6) -> dict:
    items = []
    bad = 0
    vectors = [FockVector.basis(mu) for mu in partitions_up_to(degmax)]
    for i in range(1, modes + 1):
        for j in range(1, modes + 1):
            for v in vectors:
                lhs = apply_mode(i, apply_mode(-j, v)) - apply_mode(-j, apply_mode(i, v))
                rhs = v * i if i == j else FockVector()
                if not (lhs - rhs).is_zero():
                    bad += 1
    items.append(item(f"[a_i, a_-j] = i delta_ij on degree <= {degmax}, modes <= {modes}",
                      bad == 0, f"{bad} failures", "0 failures"))

    d = 6
    g0 = number_operator(d)
    ok = all(g0.apply(FockVector.basis(mu)) == FockVector.basis(mu, mu.size) for mu in partitions_up_to(d))
    items.append(item("sum a_-i a_i acts as the degree on degree <= 6", ok))

    from .chern import g1_display
    ops = [g1_display(d + 2), NormalOrderedOp({GP((-2, 1, 1)): 1, GP((-1, -1, 2)): Fraction(1, 2)}, d + 2),
           NormalOrderedOp({GP((-3,)): 1, GP((-1, 2)): var("t1")}), NormalOrderedOp({GP((2,)): 1, GP((-1, 1)): 3})]
    bad = 0
    for a in ops:
        for b in ops:
            try:
                ab = compose(a, b, d)
            except Exception:
                continue
            for mu in partitions_up_to(d):
                v = FockVector.basis(mu)
                if not (ab.apply(v) - a.apply(b.apply(v))).is_zero():
                    bad += 1
    items.append(item("normal-ordered composition agrees with successive application, degree <= 6",
                      bad == 0, f"{bad} failures", "0 failures"))

    class _G0:
        def weight(self):
            return 0

        def action_matrix(self, n):
            k = len(partitions_of(n))
            return [[n if r == c else 0 for c in range(k)] for r in range(k)]

    exp = expand_in_monomials(_G0(), d, 2)
    items.append(item("expansion of the degree operator recovers sum a_-i a_i", exp.equal_terms(number_operator(d)),
                      exp, number_operator(d)))
    return report("heisenberg", {"degmax": degmax, "modes": modes}, items)


def young() -> dict:
    lam = Partition((5, 5, 5, 2, 1))
    s = lam.cell_stats(2, 1)
    got = (s.leg, s.coleg, s.arm, s.coarm, s.hook, s.content)
    want = (1, 2, 3, 1, 5, -1)
    items = [item("cell (2,1) of (5,5,5,2,1): (l, l', a, a', h, c)", got == want, got, want),
             item("(5,5,5,2,1) has 18 cells", lam.size == 18, lam.size, 18)]
    return report("young", {}, items)


def gamma(degmax: int = 4, window: int = 5) -> dict:
    from .vertex import (V_apply, V_gamma_form, W_apply, gamma_apply, gamma_exchange_sides,
                         gamma_plus_commutator_sides, series_apply)

    items = []
    r = var("r")
    bad = 0
    for mu in partitions_up_to(degmax + 1):
        for n in range(1, 5):
            lhs, rhs = gamma_plus_commutator_sides(FockVector.basis(mu), n, r)
            if not (lhs - rhs) == 0:
                bad += 1
    items.append(item(f"[Gamma_+(z)^r, a_-n] = r z^-n Gamma_+(z)^r, degree <= {degmax + 1}, n <= 4",
                      bad == 0, f"{bad} failures", "0 failures"))

    a, b = var("a"), var("b")
    bad = 0
    for mu in partitions_up_to(degmax):
        lhs, rhs = gamma_exchange_sides(FockVector.basis(mu), a, b, window)
        for key in set(lhs) | set(rhs):
            x = lhs.get(key, FockVector())
            y = rhs.get(key, FockVector())
            if not (x - y).is_zero():
                bad += 1
    items.append(item(f"Gamma_+(z)^a Gamma_-(y)^b exchange, degree <= {degmax}, y-window {window}",
                      bad == 0, f"{bad} failures", "0 failures"))

    q, t = var("q"), var("t")
    qt, tt = var("a"), var("b")
    ok = True
    for mu in partitions_up_to(2):
        v = FockVector.basis(mu)
        if not (V_apply(v, q, t, qt, tt, 3) - V_gamma_form(v, q, t, qt, tt, 3)) == 0:
            ok = False
    items.append(item("direct V equals its Gamma-product form, degree <= 2, window 3", ok))
    v = FockVector.basis((2, 1))
    ident = V_apply(v, q, t, q, t, 3)
    items.append(item("V(z; q, t, q, t) is the identity",
                      (ident - AuxSeries("z", {0: v}, ident.low, ident.high)) == 0))

    ok = True
    m = var("m")
    for mu in partitions_up_to(2):
        v = FockVector.basis(mu)
        w = W_apply(v, 3, t1=1, t2=-1)
        g = gamma_apply("+", 1, -m, v, 3)
        g = series_apply(g, lambda u: gamma_apply("-", 1, m, u, 3 - g.low))
        if not (w - g.with_high(3)) == 0:
            ok = False
    items.append(item("W at t1 = 1, t2 = -1 equals Gamma_-(z)^m Gamma_+(z)^-m", ok))
    return report("gamma", {"degmax": degmax, "window": window}, items)


def jack_eigen(degmax: int = 6, b_degmax: int = 5, dual_degmax: int = 4) -> dict:
    from .symfunc import jack_J, macdonald_J, substitute, transformed_H
    from .vertex import B_apply, bbar_apply, bbar_k

    q, t, alpha = var("q"), var("t"), var("alpha")
    items = []
    for n in range(degmax + 1):
        bad = []
        for lam in partitions_of(n):
            J = macdonald_J(lam)
            e = sum((q ** c.coarm * t ** (-c.coleg) for c in lam.all_cell_stats()), RatFunc.coerce(0))
            if not (bbar_apply(J) - J * e).is_zero():
                bad.append(str(lam))
        items.append(item(f"Bbar(q, 1/t) J = sum q^a' t^-l' J on degree {n}", not bad, bad or "all", "all"))
    for n in range(b_degmax + 1):
        bad = []
        for lam in partitions_of(n):
            H = transformed_H(lam)
            e = sum((q ** c.coarm * t ** c.coleg for c in lam.all_cell_stats()), RatFunc.coerce(0))
            if not (B_apply(H) - H * e).is_zero():
                bad.append(str(lam))
        items.append(item(f"B(q, t) H~ = sum q^a' t^l' H~ on degree {n}", not bad, bad or "all", "all"))
    for n in range(dual_degmax + 1):
        bad = []
        for lam in partitions_of(n):
            J = macdonald_J(lam)
            lhs = substitute(J, {"q": 1 / q, "t": 1 / t})
            rhs = J * (RatFunc.coerce((-1) ** n) * q ** (-lam.conjugate().n()) * t ** (-lam.n() - n))
            if not (lhs - rhs).is_zero():
                bad.append(str(lam))
        items.append(item(f"duality J(1/q, 1/t) on degree {n}", not bad, bad or "all", "all"))
    for k in range(3):
        bad = []
        op = bbar_k(k, 5)
        for n in range(6):
            for lam in partitions_of(n):
                J = jack_J(lam)
                e = sum(((alpha * c.coarm - c.coleg) ** k for c in lam.all_cell_stats()), RatFunc.coerce(0))
                if not (op.apply(J) - J * (e * Fraction(1, factorial(k)))).is_zero():
                    bad.append(str(lam))
        items.append(item(f"Bbar_{k} J^(alpha) = sum (a' alpha - l')^{k}/{k}! J^(alpha), degree <= 5",
                          not bad, bad or "all", "all"))
    return report("jack-eigen", {"degmax": degmax, "b_degmax": b_degmax, "dual_degmax": dual_degmax}, items)


def thm_1_2(ks: tuple[int, ...] = (0, 1, 2), degmax: int | None = None) -> dict:
    from .chern import verify_fock_formula

    items = []
    for k in ks:
        d = degmax if degmax is not None else (6 if k < 2 else 5)
        r = verify_fock_formula(k, d)
        items.append(item(f"G_{k} eigen matrices = Fock matrices, degree <= {d}", r["status"] == "PASS",
                          f"{len(r['mismatches'])} mismatches", "0 mismatches"))
    return report("thm-1-2", {"k": list(ks), "degmax": degmax}, items)


def g2(degmax: int = 6) -> dict:
    from .chern import (bbar1_display, bbar2_display, g1_display, g2_display, gk_eigen,
                        gk_fock_op)
    from .vertex import bbar_k

    d = degmax
    items = [
        item("Bbar_0 = sum a_-i a_i", bbar_k(0, d).equal_terms(number_operator(d))),
        item("Bbar_1 matches its closed display", bbar_k(1, d).equal_terms(bbar1_display(d))),
        item("Bbar_2 matches its closed display", bbar_k(2, d).equal_terms(bbar2_display(d))),
        item("G_0 Fock form = sum a_-i a_i", gk_fock_op(0, d).equal_terms(number_operator(d))),
        item("G_1 Fock form matches the boundary-operator display", gk_fock_op(1, d).equal_terms(g1_display(d))),
        item("G_2 Fock form matches its closed display", gk_fock_op(2, d).equal_terms(g2_display(d))),
    ]
    exp = expand_in_monomials(gk_eigen(2, 5), 5)
    items.append(item("G_2 expanded from eigen matrices (degree <= 5) matches the display",
                      exp.equal_terms(g2_display(5))))
    return report("g2", {"degmax": degmax}, items)


def reduced_closed_forms(qmax: int = 10) -> dict:
    from .traces import raw_trace, reduced, reduced_ch0_closed, reduced_ch1_closed, vacuum_trace

    items = [
        item(f"<ch_0>' closed form through q^{qmax}", reduced((0,), qmax).series == reduced_ch0_closed(qmax)),
        item(f"<ch_1>' closed form through q^{qmax}", reduced((1,), qmax).series == reduced_ch1_closed(qmax)),
        item("<>' = 1", reduced((), qmax).series == QSeries.one(qmax)),
        item("vacuum trace equals the empty eigen sum through q^8",
             raw_trace((), 8).series == vacuum_trace(8).series),
    ]
    return report("reduced-closed-forms", {"qmax": qmax}, items)


def route_equality(kmax: int = 4, qmax: int = 8) -> dict:
    from .traces import reduced, reduced_m0_onepoint

    items = []
    for k in range(kmax + 1):
        a = reduced((k,), qmax, m=0).series
        b = reduced_m0_onepoint(k, qmax)
        items.append(item(f"<ch_{k}>'_0: eigen route = one-point formula through q^{qmax}", a == b, a, b))
    return report("route-equality", {"kmax": kmax, "qmax": qmax}, items)


def qzeta_identities(qmax: int = 30, bi_qmax: int = 12) -> dict:
    from .qzeta import bibracket, bracket, bracket_eulerian, z_value

    b2, b3, b4 = bracket([2], qmax), bracket([3], qmax), bracket([4], qmax)
    items = [
        item(f"Z(2) = [2] through q^{qmax}", z_value([2], qmax) == b2),
        item(f"Z(3) = 2[3] through q^{qmax}", z_value([3], qmax) == b3 * 2),
        item(f"Z(4) = [4] - 1/6 [2] through q^{qmax}", z_value([4], qmax) == b4 - b2 * Fraction(1, 6)),
    ]
    for s in [(1,), (2,), (3,), (2, 1), (3, 2), (2, 1, 1)]:
        zeros = (0,) * len(s)
        items.append(item(f"bibracket {list(s)} with zero lower row = bracket through q^{bi_qmax}",
                          bibracket(s, zeros, bi_qmax) == bracket_eulerian(s, bi_qmax)))
    return report("qzeta-identities", {"qmax": qmax, "bi_qmax": bi_qmax}, items)


def derivative(nmax: int = 5, degmax: int = 8, lead_n: int = 3, lead_k: int = 3) -> dict:
    from .derivatives import a_prime_closed, leading_term_check
    from .derivatives import derivative as deriv

    items = []
    for n in range(1, nmax + 1):
        for sign in (-1, 1):
            d = deriv(NormalOrderedOp.mode(sign * n), 1, degmax)
            c = a_prime_closed(sign * n, degmax)
            items.append(item(f"[G_1, a_{sign * n}] = closed form on degree <= {degmax}", d.equal_terms(c)))
    for n in range(1, lead_n + 1):
        for k in range(0, lead_k + 1):
            r = leading_term_check(n, k)
            agree = sum(row["agree"] for row in r["rows"])
            items.append(item(f"leading terms of a_-{n}^({k}), degree <= {r['degree']}", r["status"] == "PASS",
                              f"{agree}/{len(r['rows'])} agree, {len(r['longer_terms'])} longer terms"))
    return report("derivative", {"nmax": nmax, "degmax": degmax, "lead_n": lead_n, "lead_k": lead_k}, items)


def thm_1_4(q_i: int = 8, q_ii: int = 30, q_iii: int = 6) -> dict:
    from .traces import reduced_structure_checks

    items = [item(c.name, c.ok, c.detail) for c in reduced_structure_checks(q_i, q_ii, q_iii)]
    return report("thm-1-4", {"q_i": q_i, "q_ii": q_ii, "q_iii": q_iii}, items)


def conjecture_probe(k: int = 3, degmax: int = 7) -> dict:
    from .chern import compare_matrices, conjecture_probe as probe, g2_display, gk_eigen, gk_fock

    items = []
    sanity = probe(2, 6)
    items.append(item("k = 2 leading coefficients match the proven display",
                      sanity["disagree"] == 0, f"{sanity['agree']} agree, {sanity['disagree']} disagree"))
    items.append(item("k = 2 full expansion matches the proven display",
                      sanity["expansion"].equal_terms(g2_display(6))))
    r = probe(k, degmax)
    items.append(item(f"k = {k} probe ran to degree {degmax}", True,
                      f"{r['agree']} agree, {r['disagree']} disagree, {len(r['longer_terms'])} longer terms, "
                      f"{len(r['lower'])} lower-length terms"))
    for row in r["rows"]:
        if not row["agree"]:
            items.append(item(f"k = {k} coefficient of {row['monomial']}", None, row["got"], row["expected"]))
    mism = compare_matrices(gk_eigen(k, min(degmax, 5)), gk_fock(k, min(degmax, 5)), min(degmax, 5))
    items.append(item(f"k = {k}: eigen vs twisted Bbar_{k} matrices, degree <= {min(degmax, 5)}",
                      None, f"{len(mism)} differing entries"))
    return report("conjecture-probe", {"k": k, "degmax": degmax}, items)


def vacuum_trace_suite(qmax: int = 10) -> dict:
    from .traces import gamma_trace_sides

    lhs, rhs = gamma_trace_sides(qmax)
    items = [item(f"Tr q^n Gamma_-(y)^b Gamma_+(1)^a = (q;q)^-1 (yq;q)^-ab through q^{qmax}", lhs == rhs)]
    zero = lhs.map(lambda c: RatFunc.coerce(c).subs({"a": 0, "b": 0}))
    items.append(item("a = b = 0 gives 1/(q;q)", zero == euler_function(qmax).inverse()))
    lin_l = lhs.map(lambda c: RatFunc.coerce(c).coefficients_in("a").get(1, 0))
    lin_r = rhs.map(lambda c: RatFunc.coerce(c).coefficients_in("a").get(1, 0))
    items.append(item("first-order part in a agrees", lin_l == lin_r))
    return report("vacuum-trace", {"qmax": qmax}, items)


SUITES: dict[str, Callable[..., dict]] = {
    "heisenberg": heisenberg,
    "young": young,
    "gamma": gamma,
    "vacuum-trace": vacuum_trace_suite,
    "jack-eigen": jack_eigen,
    "thm-1-2": thm_1_2,
    "g2": g2,
    "reduced-closed-forms": reduced_closed_forms,
    "route-equality": route_equality,
    "qzeta-identities": qzeta_identities,
    "derivative": derivative,
    "thm-1-4": thm_1_4,
    "conjecture-probe": conjecture_probe,
}
