# equivalence.py
import logging
from typing import Any, Dict, Optional

from core.base import BaseTheoremChecker, TheoremReport
from core.config import FuzzConfig
from core.corpus import CorpusEntry
from core.errors import IndeterminacyError, NoNullPointsError
from core.gaussian import RationalSampler, derive_seed
from core.generators import random_null_vector
from core.hermitian import PointKind, point_sign
from core.maps import RationalMap, evaluate_map, sample_orthogonality

logger = logging.getLogger(__name__)


def maps_null_to_null(F: RationalMap, trials: int, seed: int, height: int = 10) -> Optional[Dict[str, Any]]:
    """First sampled null point with a non-null image, or None"""
    sampler = RationalSampler(derive_seed(seed, "null-points"), height)
    for _ in range(trials):
        z = random_null_vector(F.source, sampler)
        image = evaluate_map(F, z)
        if image.is_zero:
            continue
        kind = point_sign(image).kind
        if kind is not PointKind.NULL:
            return {"point": [str(x) for x in z.coords], "image_kind": kind.value}
    return None


class Equiv1Checker(BaseTheoremChecker):
    """
    Cross-checks the divisibility test against two sampled characterizations:
    null points go to null points, orthogonal pairs go to orthogonal pairs.
    """

    theorem_id = "Equiv1"
    description = "null points to null points iff orthogonal"
    requires_orthogonal = False
    corpora = ("equivalence",)

    def hypothesis(self, entry: CorpusEntry) -> bool:
        return entry.source.r > 0 and entry.source.s > 0 and not entry.source.is_weighted

    def sampled_orthogonal(self, entry: CorpusEntry) -> bool:
        def compute() -> bool:
            F = entry.map
            try:
                bad_point = maps_null_to_null(F, self.config['trials'], entry.seed, self.config['height'])
            except (NoNullPointsError, IndeterminacyError):
                bad_point = None
            if bad_point is not None:
                self.tally("null-point-violation")
                return False
            pair = sample_orthogonality(F, self.config['pair_trials'], entry.seed, self.config['height'])
            if pair is not None:
                self.tally("orthogonal-pair-violation")
                return False
            return True
        return entry.memo(("sampled-orthogonal", self.config['trials'], self.config['pair_trials']), compute)

    def check_instance(self, entry: CorpusEntry) -> Optional[str]:
        divisible = entry.orthogonality().orthogonal
        sampled = self.sampled_orthogonal(entry)
        if divisible == sampled:
            self.tally("agree-orthogonal" if divisible else "agree-not-orthogonal")
            return None
        return f"divisibility says {divisible}, sampling says {sampled}"

    def record_extra(self, entry: CorpusEntry) -> Dict[str, Any]:
        return {"orthogonal": entry.orthogonality().orthogonal}


def check_equiv1(F: RationalMap, trials: int = FuzzConfig.DEFAULT_TRIALS, seed: int = 0,
                 pairs: int = FuzzConfig.DEFAULT_PAIR_TRIALS) -> TheoremReport:
    config = FuzzConfig.create_custom_config(trials=trials, pair_trials=pairs, seed=seed)
    return Equiv1Checker(config).check_corpus([CorpusEntry(F, frozenset(), seed, orthogonal=None)])
