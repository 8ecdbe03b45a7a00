# rigidity.py
"""
Checkers for the rigidity statements: each gates on the signatures of source
and target (and, where the statement needs it, on sampled sign evidence) and
asserts that the classified verdict lies in the allowed set.
"""
import logging
from typing import FrozenSet, List, Optional, Tuple

from sympy.polys.domains import QQ_I

from core.base import BaseTheoremChecker
from core.corpus import CorpusEntry
from core.errors import CapacityError
from core.generators import GenSpec, gen_standard
from core.hermitian import Signature, Vector, norm2, nullspace_rows
from core.maps import RationalMap, Verdict, is_linear, linear_matrix, remove_common_factor

logger = logging.getLogger(__name__)

NULLISH = frozenset({Verdict.CONSTANT, Verdict.NULL})
LINEARISH = NULLISH | {Verdict.LINEAR, Verdict.STANDARD}
QUASI_LINEARISH = LINEARISH | {Verdict.QUASI_LINEAR, Verdict.QUASI_STANDARD}
QUASI_STANDARDISH = frozenset({Verdict.QUASI_STANDARD, Verdict.STANDARD})


def _verdict_names(verdicts: FrozenSet[Verdict]) -> List[str]:
    return sorted(v.value for v in verdicts)


class VerdictSetChecker(BaseTheoremChecker):
    """A checker whose conclusion is membership of the verdict in an allowed set"""

    def allowed(self, entry: CorpusEntry) -> FrozenSet[Verdict]:
        raise NotImplementedError

    def has_sign_evidence(self, entry: CorpusEntry) -> bool:
        """Some sampled positive (negative) point went to a positive (negative) point"""
        evidence = self.sign_report(entry).single_point_evidence
        self.tally("sign-evidence" if evidence else "no-sign-evidence")
        return evidence

    def check_instance(self, entry: CorpusEntry) -> Optional[str]:
        allowed = self.allowed(entry)
        verdict = self.classification(entry).verdict
        if verdict in allowed:
            return None
        return f"verdict {verdict.value} not in {_verdict_names(allowed)}"


class SameChecker(VerdictSetChecker):
    theorem_id = "Same"
    description = "r,s >= 2 and min(r',s') <= min(r,s): null or quasi-linear"

    def hypothesis(self, entry: CorpusEntry) -> bool:
        source, target = entry.source, entry.target
        return (source.r >= 2 and source.s >= 2
                and min(target.r, target.s) <= min(source.r, source.s))

    def allowed(self, entry: CorpusEntry) -> FrozenSet[Verdict]:
        degenerate = entry.target.t > 0
        if self.has_sign_evidence(entry):
            return QUASI_STANDARDISH if degenerate else frozenset({Verdict.STANDARD})
        return QUASI_LINEARISH if degenerate else LINEARISH


class LessChecker(VerdictSetChecker):
    theorem_id = "Less"
    description = "min(r',s') < min(r,s): null"

    def hypothesis(self, entry: CorpusEntry) -> bool:
        source, target = entry.source, entry.target
        return min(target.r, target.s) < min(source.r, source.s)

    def allowed(self, entry: CorpusEntry) -> FrozenSet[Verdict]:
        return NULLISH


def linear_sign_witness(F: RationalMap) -> Optional[Vector]:
    """
    For a linear map losing positive (negative) directions: a positive
    (negative) source point whose nonzero image has no positive (negative)
    part, so its image is not positive (negative).
    """
    _, reduced = remove_common_factor(F)
    if reduced.degree != 1:
        return None
    matrix = linear_matrix(reduced)
    source, target = F.source, F.target
    blocks: List[Tuple[range, range]] = []
    if target.r < source.r:
        blocks.append((range(0, target.r), range(0, source.r)))
    if target.s < source.s:
        blocks.append((range(target.r, target.r + target.s), range(source.r, source.r + source.s)))
    for rows, cols in blocks:
        restricted = [[matrix[i][j] for j in cols] for i in rows]
        for x in nullspace_rows(restricted, len(cols)):
            coords = [QQ_I.zero] * source.n
            for j, value in zip(cols, x):
                coords[j] = value
            image = [sum((row[j] * coords[j] for j in range(source.n)), QQ_I.zero) for row in matrix]
            if any(image):
                return Vector(tuple(coords), source)
    return None


class Less2Checker(BaseTheoremChecker):
    theorem_id = "Less2"
    description = "r' < r or s' < s: no sign-preserving map"
    requires_orthogonal = False
    corpora = ("default", "linear")

    def hypothesis(self, entry: CorpusEntry) -> bool:
        source, target = entry.source, entry.target
        return target.r < source.r or target.s < source.s

    def check_instance(self, entry: CorpusEntry) -> Optional[str]:
        if not entry.source.is_weighted and not entry.target.is_weighted:
            try:
                gen_standard(GenSpec(entry.source, entry.target))
                return "a standard map was built into a target that cannot hold the source"
            except CapacityError:
                pass
        if not self.sign_report(entry).preserves_signs:
            self.tally("sampled-violation")
            return None
        if is_linear(entry.map):
            witness = linear_sign_witness(entry.map)
            if witness is not None:
                logger.debug(f"kernel witness for {entry.label}: norm {norm2(witness)}")
                self.tally("kernel-witness")
                return None
        return "no sign violation found"

    def record_extra(self, entry: CorpusEntry):
        return {"sign_report": self.sign_report(entry).to_dict()}


class Same2Checker(VerdictSetChecker):
    theorem_id = "Same2"
    description = "r,s >= 2, r = r' or s = s', sign-preserving: quasi-standard"

    def hypothesis(self, entry: CorpusEntry) -> bool:
        source, target = entry.source, entry.target
        if source.r < 2 or source.s < 2:
            return False
        if target.r != source.r and target.s != source.s:
            return False
        signs = self.sign_report(entry)
        return signs.preserves_signs and signs.single_point_evidence

    def allowed(self, entry: CorpusEntry) -> FrozenSet[Verdict]:
        return QUASI_STANDARDISH if entry.target.t else frozenset({Verdict.STANDARD})


class _NondegenerateSourceChecker(VerdictSetChecker):
    """Statements on P^{r,s} sources: null or quasi-linear, quasi-standard with sign evidence"""

    def signature_gate(self, source: Signature, target: Signature) -> bool:
        raise NotImplementedError

    def hypothesis(self, entry: CorpusEntry) -> bool:
        source = entry.source
        return (source.t == 0 and source.r >= 1 and source.s >= 1
                and self.signature_gate(source, entry.target))

    def allowed(self, entry: CorpusEntry) -> FrozenSet[Verdict]:
        if self.has_sign_evidence(entry):
            return QUASI_STANDARDISH
        return QUASI_LINEARISH


class DoubleDimChecker(_NondegenerateSourceChecker):
    theorem_id = "DoubleDim"
    description = "t = 0 and r'+s' <= 2(r+s) - 3: null or quasi-linear"

    def signature_gate(self, source: Signature, target: Signature) -> bool:
        return target.r + target.s <= 2 * (source.r + source.s) - 3


class MainChecker(_NondegenerateSourceChecker):
    theorem_id = "Main"
    description = "t = 0 and min(r',s') <= 2 min(r,s) - 2: null or quasi-linear"

    def signature_gate(self, source: Signature, target: Signature) -> bool:
        return min(target.r, target.s) <= 2 * min(source.r, source.s) - 2


class BallChecker(VerdictSetChecker):
    theorem_id = "Ball"
    description = "(1,s) -> (1,s',t') with s' <= 2s - 2: null or quasi-standard"

    @staticmethod
    def orientation(source: Signature, target: Signature) -> Optional[Tuple[int, int]]:
        """(s, s') for the ball orientation or its swap, None otherwise"""
        if source.t:
            return None
        if source.r == 1 and target.r == 1:
            return source.s, target.s
        if source.s == 1 and target.s == 1:
            return source.r, target.r
        return None

    def hypothesis(self, entry: CorpusEntry) -> bool:
        sizes = self.orientation(entry.source, entry.target)
        if sizes is None:
            return False
        s, s_target = sizes
        return s >= 2 and s_target <= 2 * s - 2

    def allowed(self, entry: CorpusEntry) -> FrozenSet[Verdict]:
        if entry.target.t:
            return NULLISH | QUASI_STANDARDISH
        return frozenset({Verdict.CONSTANT, Verdict.STANDARD})
