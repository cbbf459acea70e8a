"""Shortlex string rewriting for monoid presentations.

Relations are oriented into length-then-lexicographic (shortlex) decreasing
rules, and Knuth-Bendix completion resolves critical pairs until the system
is confluent or a budget trips.  Completion is a semi-decision procedure, so
budgets are first-class: exhaustion is reported as a status, never a wrong
answer.  A confluent system decides word equality by normal forms; otherwise
a bounded bidirectional search over raw relation applications can still
certify equality (with a replayable derivation) or give up with "unknown".

Internally words are packed one letter per character into ordinary strings,
so factor matching and replacement run on the C string machinery; the
character code of a letter is its shortlex rank, which makes plain string
comparison agree with the letter order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .presentations import EMPTY, Letter, Presentation, Word

CONFLUENT = "confluent"
BUDGET_EXHAUSTED = "budget-exhausted"

EQUAL = "equal"
DISTINCT = "distinct"
UNKNOWN = "unknown"

DEFAULT_MAX_RULES = 500
DEFAULT_MAX_RULE_LEN = 50
DEFAULT_EQ_BUDGET = 100_000
DEFAULT_LEN_SLACK = 4

_ENC_BASE = 33


class RewritingError(ValueError):
    """Misuse of the rewriting machinery (bad order, non-confluent input...)."""


class _Codec:
    """Packs words into strings; character order realizes the letter order."""

    def __init__(self, p: Presentation, letter_order=None):
        n = len(p.names)
        order = tuple(letter_order) if letter_order is not None \
            else tuple(range(n))
        if sorted(order) != list(range(n)):
            raise RewritingError("letter_order must be a permutation of the "
                                 "base letter ids")
        self.order = order
        self._pos = {bid: i for i, bid in enumerate(order)}

    def enc_letter(self, letter: Letter) -> str:
        return chr(_ENC_BASE + 2 * self._pos[letter.id]
                   + (1 if letter.barred else 0))

    def enc(self, word: Word) -> str:
        return "".join(self.enc_letter(letter) for letter in word)

    def dec(self, s: str) -> Word:
        out = []
        for ch in s:
            rank = ord(ch) - _ENC_BASE
            out.append(Letter(self.order[rank // 2], bool(rank % 2)))
        return tuple(out)


def _sl_key(s: str):
    return (len(s), s)


def shortlex_less(u: Word, v: Word, order=None) -> bool:
    """True iff u precedes v in shortlex: shorter first, letter order breaking
    length ties (``order`` is a permutation of base letter ids)."""
    if len(u) != len(v):
        return len(u) < len(v)
    if order is None:
        ku = tuple(l.rank for l in u)
        kv = tuple(l.rank for l in v)
    else:
        pos = {bid: i for i, bid in enumerate(order)}
        ku = tuple(2 * pos[l.id] + l.barred for l in u)
        kv = tuple(2 * pos[l.id] + l.barred for l in v)
    return ku < kv


@dataclass(frozen=True)
class Rule:
    """Oriented rewriting rule; lhs is strictly shortlex-greater than rhs."""

    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class ReductionStep:
    """One application of ``rule`` at letter position ``pos``."""

    rule: int
    pos: int


@dataclass(frozen=True)
class RewriteSystem:
    """An interreduced shortlex rewriting system for a presentation.

    ``status`` is ``confluent`` when every critical pair resolved during
    completion, ``budget-exhausted`` otherwise (the rules are still sound
    consequences of the relations, just not necessarily complete).
    """

    source: Presentation
    rules: tuple
    status: str
    letter_order: tuple

    @cached_property
    def _codec(self) -> _Codec:
        return _Codec(self.source, self.letter_order)

    @cached_property
    def _enc_rules(self) -> tuple:
        c = self._codec
        return tuple((c.enc(r.lhs), c.enc(r.rhs)) for r in self.rules)

    @cached_property
    def _alphabet_chars(self) -> tuple:
        return tuple(sorted(self._codec.enc_letter(l)
                            for l in self.source.alphabet))


def _orient(a: str, b: str):
    if a == b:
        return None
    return (a, b) if _sl_key(a) > _sl_key(b) else (b, a)


def kb_complete(p: Presentation, max_rules: int = DEFAULT_MAX_RULES,
                max_len: int = DEFAULT_MAX_RULE_LEN,
                letter_order=None) -> RewriteSystem:
    """Knuth-Bendix completion under shortlex, with budgets.

    Relations are oriented and critical pairs resolved FIFO (smallest overlap
    first on ties) until no unresolved pair remains, or until more than
    ``max_rules`` rules have been added or a rule side would exceed
    ``max_len`` letters.  The returned system is interreduced either way.
    """
    if max_rules <= 0 or max_len <= 0:
        raise RewritingError("completion budgets must be positive")
    codec = _Codec(p, letter_order)

    rules = []          # [lhs, rhs, alive]
    n_added = 0
    budget_hit = False
    tasks = deque()     # rule-index pairs whose overlaps are unexamined
    queued = set()
    pending = deque()   # equations awaiting orientation

    def reduce_enc(s, skip=None):
        while True:
            t = s
            for k, (l, r, alive) in enumerate(rules):
                if alive and k != skip and l in t:
                    t = t.replace(l, r)
            if t == s:
                return s
            s = t

    def process_pending():
        nonlocal n_added, budget_hit
        while pending:
            a, b = pending.popleft()
            oriented = _orient(reduce_enc(a), reduce_enc(b))
            if oriented is None:
                continue
            l, r = oriented
            if len(l) > max_len:
                budget_hit = True
                return False
            if n_added >= max_rules:
                budget_hit = True
                return False
            n_added += 1
            k = len(rules)
            rules.append([l, r, True])
            for i in range(k):
                li, ri, alive = rules[i]
                if not alive:
                    continue
                if l in li:
                    rules[i][2] = False
                    pending.append((li, ri))
                elif l in ri:
                    rules[i][1] = reduce_enc(ri)
            for j in range(len(rules)):
                if not rules[j][2]:
                    continue
                for pair in ((k, j), (j, k)) if j != k else ((k, k),):
                    if pair not in queued:
                        queued.add(pair)
                        tasks.append(pair)
        return True

    for rel in p.relations:
        pending.append((codec.enc(rel.lhs), codec.enc(rel.rhs)))
    ok = process_pending()

    while ok and tasks:
        i, j = tasks.popleft()
        if not (rules[i][2] and rules[j][2]):
            continue
        li, ri = rules[i][0], rules[i][1]
        lj, rj = rules[j][0], rules[j][1]
        cps = []
        for k in range(1, min(len(li), len(lj))):
            if lj.startswith(li[-k:]):
                cps.append((li + lj[k:], ri + lj[k:], li[:-k] + rj))
        cps.sort(key=lambda t: _sl_key(t[0]))
        for _, a, b in cps:
            pending.append((a, b))
        ok = process_pending()

    final = _tidy(rules, reduce_enc)
    status = BUDGET_EXHAUSTED if budget_hit else CONFLUENT
    decoded = tuple(Rule(codec.dec(l), codec.dec(r)) for l, r in final)
    order = codec.order
    return RewriteSystem(p, decoded, status, order)


def _tidy(rules, reduce_enc):
    """Final interreduction: drop rules with reducible lhs, normalize rhs."""
    for k, (l, r, alive) in enumerate(rules):
        if not alive:
            continue
        if reduce_enc(l, skip=k) != l:
            rules[k][2] = False
    out = []
    for k, (l, r, alive) in enumerate(rules):
        if alive:
            out.append((l, reduce_enc(r)))
    out.sort(key=lambda lr: (_sl_key(lr[0]), _sl_key(lr[1])))
    return out


def _leftmost_step(s, enc_rules):
    best_pos, best_idx = -1, -1
    for idx, (l, _) in enumerate(enc_rules):
        pos = s.find(l)
        if pos != -1 and (best_pos == -1 or pos < best_pos):
            best_pos, best_idx = pos, idx
    return (best_pos, best_idx) if best_idx != -1 else None


def reduce_with_trace(word: Word, rs: RewriteSystem):
    """Deterministic reduction (leftmost match, lowest rule index on ties);
    returns the irreducible word and the applied steps."""
    s = rs._codec.enc(word)
    enc_rules = rs._enc_rules
    steps = []
    while True:
        hit = _leftmost_step(s, enc_rules)
        if hit is None:
            break
        pos, idx = hit
        l, r = enc_rules[idx]
        s = s[:pos] + r + s[pos + len(l):]
        steps.append(ReductionStep(idx, pos))
    return rs._codec.dec(s), tuple(steps)


def reduce(word: Word, rs: RewriteSystem) -> Word:
    """The word rewritten until no rule lhs occurs as a factor."""
    return reduce_with_trace(word, rs)[0]


def critical_pairs(rs: RewriteSystem):
    """All critical pairs (overlap word, result via rule i, result via rule j)
    of the system, overlaps and containments alike, as words."""
    enc_rules = rs._enc_rules
    dec = rs._codec.dec
    out = []
    for i, (li, ri) in enumerate(enc_rules):
        for j, (lj, rj) in enumerate(enc_rules):
            for k in range(1, min(len(li), len(lj))):
                if lj.startswith(li[-k:]):
                    out.append((dec(li + lj[k:]),
                                dec(ri + lj[k:]),
                                dec(li[:-k] + rj)))
            if i != j and lj in li:
                start = 0
                while (pos := li.find(lj, start)) != -1:
                    out.append((dec(li), dec(ri),
                                dec(li[:pos] + rj + li[pos + len(lj):])))
                    start = pos + 1
    return out


def verify_confluence(rs: RewriteSystem):
    """Exhaustive critical-pair scan; returns the unresolved pairs (empty
    exactly when the system is confluent on its overlaps)."""
    bad = []
    for w, a, b in critical_pairs(rs):
        na, nb = reduce(a, rs), reduce(b, rs)
        if na != nb:
            bad.append((w, na, nb))
    return bad


def enumerate_elements(rs: RewriteSystem, max_len: int):
    """All irreducible words of length <= max_len, in shortlex order; each is
    the canonical representative of a distinct element.  Requires a confluent
    system."""
    if rs.status != CONFLUENT:
        raise RewritingError("element enumeration requires a confluent system")
    lhss = tuple(l for l, _ in rs._enc_rules)
    chars = rs._alphabet_chars
    dec = rs._codec.dec
    out = [EMPTY]
    level = [""]
    for _ in range(max_len):
        nxt = []
        for w in level:
            for ch in chars:
                t = w + ch
                if any(t.endswith(l) for l in lhss):
                    continue
                nxt.append(t)
        out.extend(dec(t) for t in nxt)
        level = nxt
    return out


# -- word equality --------------------------------------------------------


@dataclass(frozen=True)
class NormalFormCertificate:
    """Both words reduced by a confluent system; equal verdicts have
    nf_u == nf_v, distinct verdicts differ."""

    nf_u: Word
    nf_v: Word
    trace_u: tuple
    trace_v: tuple


@dataclass(frozen=True)
class DerivationStep:
    """Apply relation ``relation`` at position ``pos``; forward replaces the
    lhs by the rhs, backward the rhs by the lhs."""

    relation: int
    pos: int
    forward: bool


@dataclass(frozen=True)
class DerivationCertificate:
    """A chain of relation applications from words[0] to words[-1]."""

    words: tuple
    steps: tuple


@dataclass(frozen=True)
class EqualityVerdict:
    value: str
    certificate: object = None
    spent: dict = field(default_factory=dict, compare=False)


def apply_derivation_step(p: Presentation, word: Word,
                          step: DerivationStep) -> Word:
    """The word after one relation application; raises if it does not fit."""
    rel = p.relations[step.relation]
    old, new = (rel.lhs, rel.rhs) if step.forward else (rel.rhs, rel.lhs)
    if word[step.pos:step.pos + len(old)] != old:
        raise RewritingError("derivation step does not match the word")
    return word[:step.pos] + new + word[step.pos + len(old):]


def replay_derivation(p: Presentation, cert: DerivationCertificate) -> bool:
    """Re-check every step of a derivation against the raw relations."""
    if len(cert.words) != len(cert.steps) + 1:
        return False
    for word, step, nxt in zip(cert.words, cert.steps, cert.words[1:]):
        try:
            if apply_derivation_step(p, word, step) != nxt:
                return False
        except (RewritingError, IndexError):
            return False
    return True


def derive_equal(p: Presentation, u: Word, v: Word,
                 budget: int = DEFAULT_EQ_BUDGET,
                 len_slack: int = DEFAULT_LEN_SLACK,
                 letter_order=None) -> EqualityVerdict:
    """Bounded bidirectional search for a derivation u = v over the raw
    relations.  Never answers "distinct": the outcome is equal (with a
    replayable derivation) or unknown once ``budget`` visited words or the
    length cap prune the search."""
    codec = _Codec(p, letter_order)
    rels = []
    for idx, rel in enumerate(p.relations):
        a, b = codec.enc(rel.lhs), codec.enc(rel.rhs)
        if a != b:
            rels.append((idx, a, b))
    su, sv = codec.enc(u), codec.enc(v)
    maxlen = max(len(su), len(sv)) + len_slack
    spent = {"visited": 2, "max_word_len": maxlen}

    if su == sv:
        return EqualityVerdict(EQUAL, DerivationCertificate((u,), ()), spent)

    def neighbors(w):
        out = []
        for idx, a, b in rels:
            for old, new, fwd in ((a, b, True), (b, a, False)):
                if not old:
                    if len(w) + len(new) <= maxlen:
                        for pos in range(len(w) + 1):
                            out.append((w[:pos] + new + w[pos:],
                                        (idx, pos, fwd)))
                elif len(w) - len(old) + len(new) <= maxlen:
                    start = 0
                    while (pos := w.find(old, start)) != -1:
                        out.append((w[:pos] + new + w[pos + len(old):],
                                    (idx, pos, fwd)))
                        start = pos + 1
        return out

    # parent maps: word -> (parent word, step applied to the parent)
    parents = ({su: None}, {sv: None})
    frontiers = [[su], [sv]]
    meet = None

    while frontiers[0] and frontiers[1] and meet is None:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        here, there = parents[side], parents[1 - side]
        nxt = []
        for w in frontiers[side]:
            for t, step in neighbors(w):
                if t in here:
                    continue
                here[t] = (w, step)
                spent["visited"] += 1
                nxt.append(t)
                if t in there:
                    meet = t
                    break
                if spent["visited"] >= budget:
                    return EqualityVerdict(UNKNOWN, None, spent)
            if meet is not None:
                break
        frontiers[side] = nxt

    if meet is None:
        return EqualityVerdict(UNKNOWN, None, spent)

    def path_to(side, w):
        chain = []
        while parents[side][w] is not None:
            parent, step = parents[side][w]
            chain.append((parent, step, w))
            w = parent
        chain.reverse()
        return chain

    words = [su]
    steps = []
    for _, step, child in path_to(0, meet):
        steps.append(DerivationStep(*step))
        words.append(child)
    for parent, (idx, pos, fwd), _ in reversed(path_to(1, meet)):
        steps.append(DerivationStep(idx, pos, not fwd))
        words.append(parent)

    cert = DerivationCertificate(tuple(codec.dec(w) for w in words),
                                 tuple(steps))
    return EqualityVerdict(EQUAL, cert, spent)


def equal_words(system_or_presentation, u: Word, v: Word,
                budget: int = DEFAULT_EQ_BUDGET) -> EqualityVerdict:
    """Decide whether two words name the same element.

    Given a confluent rewrite system the verdict is always decisive and the
    certificate is the normal-form comparison.  Given a presentation, or a
    system whose completion ran out of budget, falls back to the bounded
    derivation search and may return unknown.
    """
    arg = system_or_presentation
    if isinstance(arg, RewriteSystem):
        if arg.status == CONFLUENT:
            nf_u, trace_u = reduce_with_trace(u, arg)
            nf_v, trace_v = reduce_with_trace(v, arg)
            cert = NormalFormCertificate(nf_u, nf_v, trace_u, trace_v)
            value = EQUAL if nf_u == nf_v else DISTINCT
            return EqualityVerdict(value, cert, {"reductions": 2})
        return derive_equal(arg.source, u, v, budget,
                            letter_order=arg.letter_order)
    return derive_equal(arg, u, v, budget)
