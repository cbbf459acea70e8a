"""Group-embeddability probing for presented cancellative monoids.

A monoid M embeds in its two-sided group of fractions only if distinct
elements of M stay distinct there.  The probe materializes both sides: it
completes M to get normal forms, enumerates every element up to a length
bound, builds the group extension G(M), and asks which pairs of distinct
M-elements become equal in G(M).  A pair that collapses is a witness that no
embedding exists; the probe reports it together with replayable evidence.

check_malcev_condition runs the classical quadruple test on a finite table:
  x a = y b,  x c = y d,  u a = v b   must force   u c = v d
in any group, so a violating 8-tuple rules out embeddability without ever
building G(M).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .finite import CayleyTable, TableError, is_associative
from .presentations import PLAIN, Presentation, Word, build_gm, parse_presentation_text
from .rewriting import (CONFLUENT, DEFAULT_EQ_BUDGET, DEFAULT_MAX_RULES,
                        DEFAULT_MAX_RULE_LEN, EQUAL, DerivationCertificate,
                        NormalFormCertificate, derive_equal,
                        enumerate_elements, kb_complete, reduce,
                        reduce_with_trace)


class ProbeError(ValueError):
    def __init__(self, message: str, stage: str = "input", details=None):
        super().__init__(message)
        self.stage = stage
        self.details = dict(details or {})


@dataclass(frozen=True)
class CollisionWitness:
    """Distinct normal forms u, v of M that name the same element of G(M).

    g_certificate holds the two reduction traces to the shared G(M) normal
    form when the extension's rewriting system is confluent; derivation, when
    present, is a replayable chain of raw relation applications from u to v.
    """

    u: Word
    v: Word
    g_normal_form: Word | None = None
    g_certificate: NormalFormCertificate | None = None
    derivation: DerivationCertificate | None = None


@dataclass(frozen=True, eq=False)
class EmbeddingReport:
    source: Presentation
    gm: Presentation
    status: str                  # collision | no-collision-found | inconclusive
    probe_length: int
    element_count: int
    witnesses: tuple             # CollisionWitness, minimal pair first
    inconclusive: tuple          # (u, v) pairs the budget could not settle
    budget_spent: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        ws = self.source.word_str
        gs = self.gm.word_str
        witnesses = []
        for w in self.witnesses:
            entry = {"u": ws(w.u), "v": ws(w.v)}
            if w.g_normal_form is not None:
                entry["g_normal_form"] = gs(w.g_normal_form)
            if w.derivation is not None:
                entry["derivation_steps"] = len(w.derivation.steps)
                entry["derivation"] = [
                    {"relation": s.relation, "position": s.pos,
                     "forward": s.forward}
                    for s in w.derivation.steps]
            witnesses.append(entry)
        return {
            "status": self.status,
            "probe_length": self.probe_length,
            "element_count": self.element_count,
            "witnesses": witnesses,
            "inconclusive_count": len(self.inconclusive),
            "inconclusive": [[ws(u), ws(v)] for u, v in self.inconclusive[:20]],
            "budget_spent": dict(self.budget_spent),
        }


def probe_embedding(p: Presentation, max_len: int,
                    budget: int = DEFAULT_EQ_BUDGET,
                    max_rules: int = DEFAULT_MAX_RULES,
                    max_rule_len: int = DEFAULT_MAX_RULE_LEN) -> EmbeddingReport:
    """Compare equality in M with equality in G(M) on all elements of M of
    length <= max_len.

    Needs a confluent completion of M itself (otherwise there is no element
    list to compare) and raises ProbeError when the rule budget cannot
    deliver one.  The extension G(M) may fail to complete; the probe then
    falls back to bounded relation-chain search per pair and marks pairs it
    cannot settle as inconclusive.
    """
    if p.kind != PLAIN:
        raise ProbeError("probe expects a plain monoid presentation, not an "
                         "already-extended one")
    if max_len < 1:
        raise ProbeError("probe length must be at least 1")
    rs_m = kb_complete(p, max_rules=max_rules, max_len=max_rule_len)
    if rs_m.status != CONFLUENT:
        raise ProbeError(
            "completion of the base monoid exhausted its budget, so its "
            "elements cannot be enumerated",
            stage="base-completion",
            details={"rules": len(rs_m.rules), "status": rs_m.status})
    elements = enumerate_elements(rs_m, max_len)
    gm = build_gm(p)
    rs_g = kb_complete(gm, max_rules=max_rules, max_len=max_rule_len)
    spent = {
        "base_rules": len(rs_m.rules),
        "extension_rules": len(rs_g.rules),
        "extension_status": rs_g.status,
        "pairs_checked": 0,
        "words_visited": 0,
    }
    n = len(elements)
    witnesses = []
    inconclusive = []
    if rs_g.status == CONFLUENT:
        buckets: dict = {}
        for i, w in enumerate(elements):
            buckets.setdefault(reduce(w, rs_g), []).append(i)
        spent["pairs_checked"] = n * (n - 1) // 2
        pairs = sorted((i, j)
                       for members in buckets.values() if len(members) > 1
                       for k, i in enumerate(members)
                       for j in members[k + 1:])
        for i, j in pairs:
            u, v = elements[i], elements[j]
            nf_u, trace_u = reduce_with_trace(u, rs_g)
            nf_v, trace_v = reduce_with_trace(v, rs_g)
            verdict = derive_equal(gm, u, v, budget=budget)
            spent["words_visited"] += verdict.spent.get("visited", 0)
            witnesses.append(CollisionWitness(
                u, v, nf_u,
                NormalFormCertificate(nf_u, nf_v, tuple(trace_u), tuple(trace_v)),
                verdict.certificate if verdict.value == EQUAL else None))
    else:
        found = False
        for i in range(n):
            if found:
                break
            for j in range(i + 1, n):
                verdict = derive_equal(gm, elements[i], elements[j],
                                       budget=budget)
                spent["pairs_checked"] += 1
                spent["words_visited"] += verdict.spent.get("visited", 0)
                if verdict.value == EQUAL:
                    witnesses.append(CollisionWitness(
                        elements[i], elements[j],
                        derivation=verdict.certificate))
                    found = True
                    break
                inconclusive.append((elements[i], elements[j]))
    if witnesses:
        status = "collision"
    elif inconclusive:
        status = "inconclusive"
    else:
        status = "no-collision-found"
    return EmbeddingReport(p, gm, status, max_len, n, tuple(witnesses),
                           tuple(inconclusive), spent)


# The three-relation monoid below satisfies no group law forcing u c = v d,
# yet x a = y b, x c = y d, u a = v b hold by fiat; in any group those three
# force u c = v d, so its group extension must glue uc to vd.
_QUADRUPLE_TEXT = """\
letters: x y a b c d u v
rel: x a = y b
rel: x c = y d
rel: u a = v b
"""


def quadruple_presentation() -> Presentation:
    """The stock non-embeddable cancellative monoid used by the demos."""
    return parse_presentation_text(_QUADRUPLE_TEXT)


@dataclass(frozen=True)
class MalcevReport:
    """Outcome of the quadruple condition on one finite table."""

    systems_checked: int
    violations: tuple    # 8-tuples (a, b, c, d, u, v, x, y)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "systems_checked": self.systems_checked,
            "holds": self.holds,
            "violations": [list(t) for t in self.violations],
        }


def check_malcev_condition(t: CayleyTable) -> MalcevReport:
    """Scan all (a, b, c, d, u, v, x, y) with x a = y b, x c = y d,
    u a = v b and report every tuple where u c != v d."""
    if not is_associative(t):
        raise TableError("the quadruple condition is checked on semigroups; "
                         "table is not associative")
    n = t.n
    rows = t.rows
    rng = range(n)
    eq_pairs: dict = {}
    for a in rng:
        for b in rng:
            eq_pairs[(a, b)] = [(x, y) for x in rng for y in rng
                                if rows[x][a] == rows[y][b]]
    checked = 0
    violations = []
    for a in rng:
        for b in rng:
            w_ab = eq_pairs[(a, b)]
            for c in rng:
                for d in rng:
                    anchors = [(x, y) for x, y in w_ab
                               if rows[x][c] == rows[y][d]]
                    if not anchors:
                        continue
                    for u, v in w_ab:
                        for x, y in anchors:
                            checked += 1
                            if rows[u][c] != rows[v][d]:
                                violations.append((a, b, c, d, u, v, x, y))
    return MalcevReport(checked, tuple(violations))
