"""Machine-checkable rewrite and membership certificates.

Two swap rules generate the congruence used throughout:

  neutral-swap     w = p|u|v|q      ->  p|v|u|q     deg(u) = deg(v) = e
  conjugate-swap   w = p|u|t|v|q    ->  p|v|t|u|q   deg(u) = deg(v) != e,
                                                    deg(t) = deg(u)^-1

Both preserve the generic evaluation of the word exactly.  An equivalence
certificate is a replayable list of such steps from one word to another; a
membership certificate reduces a multihomogeneous polynomial, pairing off
terms through equivalence certificates until every remaining term is a
monomial identity on its own.  Verifiers recompute every side condition
and every evaluation from scratch, so checking is independent of how a
certificate was produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence, Union

from .commpoly import RATIONALS, Field, Poly
from .freealg import (
    FreePoly,
    Word,
    degree_sequence,
    format_polynomial,
    format_word,
    is_multihomogeneous,
    parse_polynomial,
    parse_word,
    word_degree,
)
from .generic import (
    evaluate,
    matching_entry,
    matching_permutation,
    require_distinct,
    word_product_closed,
)
from .grading import Grading
from .groups import Group

CERTIFICATE_FORMAT = 1

NEUTRAL_SWAP = "neutral-swap"
CONJUGATE_SWAP = "conjugate-swap"

JUSTIFY_EMPTY_LSET = "empty-lset"
JUSTIFY_OUTSIDE_SUPPORT = "degree-outside-support"


class StepError(ValueError):
    """A rewrite step does not apply: bad factorization or side condition."""


@dataclass(frozen=True)
class RewriteStep:
    """One swap with its full factorization, as 0-based cut points.

    neutral-swap:    split (i, j, k)    gives p=w[:i], u=w[i:j], v=w[j:k]
    conjugate-swap:  split (i, j, k, l) gives p=w[:i], u=w[i:j], t=w[j:k],
                                        v=w[k:l]
    The trailing block q is whatever remains after the last cut.
    """

    rule: str
    split: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rule not in (NEUTRAL_SWAP, CONJUGATE_SWAP):
            raise ValueError(f"unknown rewrite rule {self.rule!r}")
        want = 3 if self.rule == NEUTRAL_SWAP else 4
        if len(self.split) != want:
            raise ValueError(f"{self.rule} needs {want} cut points, got {len(self.split)}")

    def shifted(self, offset: int) -> "RewriteStep":
        return RewriteStep(self.rule, tuple(c + offset for c in self.split))

    def inverse(self) -> "RewriteStep":
        """The step undoing this one on the swapped word."""
        if self.rule == NEUTRAL_SWAP:
            i, j, k = self.split
            return RewriteStep(NEUTRAL_SWAP, (i, i + (k - j), k))
        i, j, k, l = self.split
        lu, lt, lv = j - i, k - j, l - k
        return RewriteStep(CONJUGATE_SWAP, (i, i + lv, i + lv + lt, l))


def apply_step(group: Group, word: Word, step: RewriteStep) -> Word:
    """Apply one swap, checking the factorization and degree conditions."""
    eps = group.identity()
    cuts = step.split
    if any(cuts[a] >= cuts[a + 1] for a in range(len(cuts) - 1)):
        raise StepError(f"factorization mismatch: cut points {cuts} must increase")
    if cuts[0] < 0 or cuts[-1] > len(word):
        raise StepError(
            f"factorization mismatch: cut points {cuts} outside word of length {len(word)}"
        )
    if step.rule == NEUTRAL_SWAP:
        i, j, k = cuts
        u, v = word[i:j], word[j:k]
        if word_degree(group, u) != eps:
            raise StepError("side condition failed: first swapped block must have neutral degree")
        if word_degree(group, v) != eps:
            raise StepError("side condition failed: second swapped block must have neutral degree")
        return word[:i] + v + u + word[k:]
    i, j, k, l = cuts
    u, t, v = word[i:j], word[j:k], word[k:l]
    du = word_degree(group, u)
    if du == eps:
        raise StepError("side condition failed: swapped blocks must have non-neutral degree")
    if word_degree(group, v) != du:
        raise StepError("side condition failed: swapped blocks must have equal degree")
    if word_degree(group, t) != group.inverse(du):
        raise StepError("side condition failed: middle block must have the inverse degree")
    return word[:i] + v + t + u + word[l:]


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Replayable derivation start ->* end, one swap per step."""

    start: Word
    steps: tuple[RewriteStep, ...]
    end: Word


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def check_equivalence_certificate(grading: Grading, cert: EquivalenceCertificate) -> CheckResult:
    """Replay a derivation, recomputing side conditions and evaluations.

    Accepts only when every step applies, the final word is the recorded
    end, and the generic evaluation of every intermediate word equals the
    start's.
    """
    group = grading.group
    current = tuple(cert.start)
    if not current:
        return CheckResult(False, "start word is empty")
    reference = word_product_closed(grading, RATIONALS, current)
    for idx, step in enumerate(cert.steps):
        try:
            current = apply_step(group, current, step)
        except StepError as exc:
            return CheckResult(False, f"step {idx}: {exc}")
        if word_product_closed(grading, RATIONALS, current) != reference:
            return CheckResult(False, f"step {idx}: generic evaluation changed")
    if current != tuple(cert.end):
        return CheckResult(False, "replayed word does not match the recorded end")
    return CheckResult(True)


def _alignment_step(
    group: Group, msuf: Word, nsuf: Word, sigma: Sequence[int], a: int
) -> tuple[str, RewriteStep]:
    """One swap making the two suffixes start with the same letter.

    `sigma` is the letter matching of the suffixes and `a` the 1-based
    position in nsuf of msuf's leading letter.  Returns ("n", step) or
    ("m", step) naming the side to rotate: when some value r sits before
    position a while r+1 sits after, nsuf rotates; otherwise the positions
    before a hold exactly msuf's top segment and msuf rotates instead.
    A conjugate rotation collapses to a neutral swap of merged blocks
    whenever its middle block is empty or all three blocks are neutral.
    """
    eps = group.identity()
    q = len(sigma)
    inv = [0] * (q + 1)
    for l, value in enumerate(sigma, start=1):
        inv[value] = l

    r = next((r for r in range(1, q) if inv[r] < a < inv[r + 1]), None)
    if r is not None:
        ir, ir1 = inv[r], inv[r + 1]
        if ir + 1 == a or word_degree(group, nsuf[:ir]) == eps:
            return "n", RewriteStep(NEUTRAL_SWAP, (0, a - 1, ir1 - 1))
        return "n", RewriteStep(CONJUGATE_SWAP, (0, ir, a - 1, ir1 - 1))
    b = q - a + 2
    s1 = sigma[0]
    if b == s1 or word_degree(group, msuf[: b - 1]) == eps:
        return "m", RewriteStep(NEUTRAL_SWAP, (0, s1 - 1, q))
    return "m", RewriteStep(CONJUGATE_SWAP, (0, b - 1, s1 - 1, q))


def derive_equivalence(grading: Grading, m: Word, n: Word) -> EquivalenceCertificate:
    """Derive a certificate from n to m.

    Requires a shared nonzero entry (and a distinct-entry grading).  The
    derivation aligns one letter at a time: recover the letter matching of
    the unaligned suffixes, rotate whichever side the matching dictates so
    the leading letters agree, and strip.  Rotations applied to the m side
    are appended to the certificate inverted, so the replay runs n to m.
    """
    require_distinct(grading)
    m = tuple(m)
    n = tuple(n)
    if matching_entry(grading, m, n) is None:
        raise ValueError("words do not share a nonzero entry; no derivation exists")
    group = grading.group
    m_cur, n_cur = m, n
    m_steps: list[RewriteStep] = []
    n_steps: list[RewriteStep] = []
    p = 0
    while p < len(m_cur):
        if m_cur[p] == n_cur[p]:
            p += 1
            continue
        msuf, nsuf = m_cur[p:], n_cur[p:]
        match = matching_entry(grading, msuf, nsuf)
        if match is None:
            raise AssertionError("shared entry lost while stripping aligned letters")
        perm = matching_permutation(grading, msuf, nsuf, match.position)
        sigma = perm.sigma
        a = sigma.index(1) + 1
        side, step = _alignment_step(group, msuf, nsuf, sigma, a)
        step = step.shifted(p)
        if side == "n":
            n_cur = apply_step(group, n_cur, step)
            n_steps.append(step)
        else:
            m_cur = apply_step(group, m_cur, step)
            m_steps.append(step)
    if m_cur != n_cur:
        raise AssertionError("alignment finished on different words")
    steps = tuple(n_steps) + tuple(s.inverse() for s in reversed(m_steps))
    return EquivalenceCertificate(start=n, steps=steps, end=m)


# ---------------------------------------------------------------------------
# membership certificates


@dataclass(frozen=True)
class Justification:
    """Why a single residual term vanishes on its own."""

    kind: str  # JUSTIFY_EMPTY_LSET | JUSTIFY_OUTSIDE_SUPPORT
    letter: Optional[int] = None  # 1-based letter whose degree has a zero component


@dataclass(frozen=True)
class Pairing:
    """Cancel term `source` against term `target` of the working list."""

    target: int
    source: int
    certificate: EquivalenceCertificate


@dataclass(frozen=True)
class ResidualTerm:
    word: Word
    coefficient: Any
    justification: Justification


@dataclass(frozen=True)
class MembershipCertificate:
    input: FreePoly
    pairings: tuple[Pairing, ...]
    residual: tuple[ResidualTerm, ...]


@dataclass(frozen=True)
class NonIdentityWitness:
    """A position whose entry survives evaluation, with the entry itself."""

    position: tuple[int, int]
    entry: Poly


def _justify_zero_word(grading: Grading, word: Word) -> Justification:
    for idx, letter in enumerate(word, start=1):
        if grading.component_dimension(letter.degree) == 0:
            return Justification(JUSTIFY_OUTSIDE_SUPPORT, letter=idx)
    if not grading.lset(degree_sequence(word)).is_empty:
        raise AssertionError("term does not vanish; nothing to justify")
    return Justification(JUSTIFY_EMPTY_LSET)


def _merge_terms(
    field: Field, work: list[tuple[Word, Any]], target: int, source: int
) -> list[tuple[Word, Any]]:
    """Fold the source coefficient into the target and drop the source."""
    merged = field.add(work[target][1], work[source][1])
    out = []
    for idx, item in enumerate(work):
        if idx == source:
            continue
        if idx == target:
            if not field.is_zero(merged):
                out.append((item[0], merged))
        else:
            out.append(item)
    return out


def certify_membership(
    grading: Grading, f: FreePoly
) -> Union[MembershipCertificate, NonIdentityWitness]:
    """Certify a multihomogeneous identity, or witness the failure.

    When f evaluates to zero the cancellation loop runs: take the first
    term whose own evaluation is nonzero, find a later term sharing a
    nonzero entry (one must exist, since the full sum cancels), record the
    equivalence certificate between the two words, and merge.  Terms left
    at the end vanish individually and are recorded with their reason.
    """
    require_distinct(grading)
    if not is_multihomogeneous(f):
        raise ValueError("input must be multihomogeneous; decompose first")
    for word in f.terms:
        if not word:
            raise ValueError("polynomial has a term with the empty word")
    total = evaluate(grading, f)
    if not total.is_zero():
        position, entry = total.first_nonzero()
        return NonIdentityWitness(position=position, entry=entry)

    field = f.field
    work: list[tuple[Word, Any]] = f.sorted_terms()
    pairings: list[Pairing] = []
    while True:
        target = next(
            (
                idx
                for idx, (word, _) in enumerate(work)
                if not word_product_closed(grading, field, word).is_zero()
            ),
            None,
        )
        if target is None:
            break
        source = next(
            (
                idx
                for idx in range(target + 1, len(work))
                if matching_entry(grading, work[target][0], work[idx][0]) is not None
            ),
            None,
        )
        if source is None:
            raise AssertionError("zero sum with an uncancellable term")
        cert = derive_equivalence(grading, work[target][0], work[source][0])
        pairings.append(Pairing(target=target, source=source, certificate=cert))
        work = _merge_terms(field, work, target, source)

    residual = tuple(
        ResidualTerm(word, coeff, _justify_zero_word(grading, word)) for word, coeff in work
    )
    return MembershipCertificate(input=f, pairings=tuple(pairings), residual=residual)


def check_membership_certificate(
    grading: Grading, f: FreePoly, cert: MembershipCertificate
) -> CheckResult:
    """Replay a membership certificate against the polynomial it claims."""
    if cert.input != f:
        return CheckResult(False, "certificate was issued for a different polynomial")
    field = f.field
    work: list[tuple[Word, Any]] = f.sorted_terms()
    for idx, pairing in enumerate(cert.pairings):
        t, s = pairing.target, pairing.source
        if not (0 <= t < len(work) and 0 <= s < len(work)) or t == s:
            return CheckResult(False, f"pairing {idx}: term indexes out of range")
        eq = pairing.certificate
        if tuple(eq.start) != work[s][0] or tuple(eq.end) != work[t][0]:
            return CheckResult(False, f"pairing {idx}: certificate words do not match the terms")
        sub = check_equivalence_certificate(grading, eq)
        if not sub:
            return CheckResult(False, f"pairing {idx}: {sub.reason}")
        work = _merge_terms(field, work, t, s)
    recorded = [(term.word, term.coefficient) for term in cert.residual]
    if work != recorded:
        return CheckResult(False, "replay does not reach the recorded residual")
    for idx, term in enumerate(cert.residual):
        j = term.justification
        if j.kind == JUSTIFY_OUTSIDE_SUPPORT:
            if j.letter is None or not 1 <= j.letter <= len(term.word):
                return CheckResult(False, f"residual {idx}: cited letter out of range")
            degree = term.word[j.letter - 1].degree
            if grading.component_dimension(degree) != 0:
                return CheckResult(
                    False, f"residual {idx}: cited letter's component is not zero"
                )
        elif j.kind == JUSTIFY_EMPTY_LSET:
            if not grading.lset(degree_sequence(term.word)).is_empty:
                return CheckResult(False, f"residual {idx}: chain set is not empty")
        else:
            return CheckResult(False, f"residual {idx}: unknown justification {j.kind!r}")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# serialization (stable schema, format 1)


def step_to_dict(step: RewriteStep) -> dict:
    return {"rule": step.rule, "split": list(step.split)}


def step_from_dict(obj: dict) -> RewriteStep:
    try:
        return RewriteStep(obj["rule"], tuple(obj["split"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed rewrite step: {exc}") from None


def equivalence_to_dict(cert: EquivalenceCertificate, group: Group) -> dict:
    return {
        "format": CERTIFICATE_FORMAT,
        "type": "equivalence",
        "start": format_word(group, cert.start),
        "end": format_word(group, cert.end),
        "steps": [step_to_dict(s) for s in cert.steps],
    }


def equivalence_from_dict(obj: dict, group: Group) -> EquivalenceCertificate:
    if obj.get("type") != "equivalence":
        raise ValueError("not an equivalence certificate document")
    return EquivalenceCertificate(
        start=parse_word(obj["start"], group),
        steps=tuple(step_from_dict(s) for s in obj.get("steps", [])),
        end=parse_word(obj["end"], group),
    )


def justification_to_dict(j: Justification) -> dict:
    out: dict = {"kind": j.kind}
    if j.letter is not None:
        out["letter"] = j.letter
    return out


def justification_from_dict(obj: dict) -> Justification:
    return Justification(kind=obj["kind"], letter=obj.get("letter"))


def membership_to_dict(cert: MembershipCertificate, group: Group) -> dict:
    field = cert.input.field
    return {
        "format": CERTIFICATE_FORMAT,
        "type": "membership",
        "input": format_polynomial(group, cert.input),
        "pairings": [
            {
                "target": pairing.target,
                "source": pairing.source,
                "certificate": equivalence_to_dict(pairing.certificate, group),
            }
            for pairing in cert.pairings
        ],
        "residual": [
            {
                "word": format_word(group, term.word),
                "coefficient": field.format(term.coefficient),
                "justification": justification_to_dict(term.justification),
            }
            for term in cert.residual
        ],
    }


def membership_from_dict(obj: dict, group: Group, field: Field) -> MembershipCertificate:
    if obj.get("type") != "membership":
        raise ValueError("not a membership certificate document")
    residual = tuple(
        ResidualTerm(
            word=parse_word(item["word"], group),
            coefficient=field.parse(item["coefficient"]),
            justification=justification_from_dict(item["justification"]),
        )
        for item in obj.get("residual", [])
    )
    pairings = tuple(
        Pairing(
            target=item["target"],
            source=item["source"],
            certificate=equivalence_from_dict(item["certificate"], group),
        )
        for item in obj.get("pairings", [])
    )
    return MembershipCertificate(
        input=parse_polynomial(obj["input"], group, field),
        pairings=pairings,
        residual=residual,
    )
