# planes.py
"""
Plane-image checkers: the boundary plane bound for orthogonal maps and the
dichotomy for maps sending l-planes into l'-planes.
"""
import logging
from typing import Any, Dict, List, Optional

from core.base import BaseTheoremChecker, TheoremReport
from core.config import FuzzConfig
from core.corpus import CorpusEntry
from core.errors import IndeterminacyError
from core.gaussian import RationalSampler, derive_seed
from core.grassmann import (PlaneKind, generic_plane_image_dim, negative_plane_from_chart,
                            plane_from_chart, random_chart, random_plane, span_of_image,
                            symbolic_plane_image_dim)
from core.hermitian import Signature, Subspace, is_null_subspace
from core.maps import RationalMap, image_span, is_linear

logger = logging.getLogger(__name__)

# symbolic plane ranks are used while the plane has at most this many indeterminates
SYMBOLIC_VARIABLES = 6
SYMBOLIC_MAX_DEGREE = 2


def random_null_plane(sig: Signature, sampler: RationalSampler) -> Subspace:
    """Maximal null plane from a Shilov chart, on the swapped signature when r > s"""
    if sig.r <= sig.s:
        return plane_from_chart(random_chart(sig, sampler, PlaneKind.NULL))
    return negative_plane_from_chart(random_chart(sig.swapped(), sampler, PlaneKind.NULL))


class BoundaryChecker(BaseTheoremChecker):
    theorem_id = "Boundary"
    description = "(min(r,s)-1)-planes map into (min(r',s')+t'-1)-planes"

    def hypothesis(self, entry: CorpusEntry) -> bool:
        return min(entry.source.r, entry.source.s) >= 1

    @staticmethod
    def bound(target: Signature) -> int:
        return min(target.r, target.s) + target.t - 1

    def check_instance(self, entry: CorpusEntry) -> Optional[str]:
        F, source = entry.map, entry.source
        k = min(source.r, source.s) - 1
        bound = self.bound(entry.target)
        sampler = RationalSampler(derive_seed(entry.seed, "boundary", entry.label), self.config['height'])
        for trial in range(self.config['plane_trials']):
            null = trial % 2 == 0
            plane = random_null_plane(source, sampler) if null else random_plane(source, k, sampler)
            try:
                image = span_of_image(F, plane)
            except IndeterminacyError:
                self.tally("indeterminate-plane")
                continue
            self.tally("null-plane" if null else "random-plane")
            if image.projective_dim > bound:
                return (f"{k}-plane {plane.describe()} maps into a "
                        f"{image.projective_dim}-plane, bound {bound}")
            if null and not is_null_subspace(image):
                return f"null plane {plane.describe()} has a non-null image span"
        return None


def check_boundary_prop(F: RationalMap, trials: int = FuzzConfig.DEFAULT_PLANE_TRIALS,
                        seed: int = 0) -> TheoremReport:
    config = FuzzConfig.create_custom_config(plane_trials=trials, seed=seed)
    checker = BoundaryChecker(config)
    entry = CorpusEntry(F, frozenset(), seed, orthogonal=None)
    return checker.check_corpus([entry])


class FaranTypeChecker(BaseTheoremChecker):
    """
    With l' the generic dimension of images of l-planes: l' <= l forces a
    linear map or an image inside an l'-plane (l' <= l-1 forces the latter);
    l <= l' <= 2l-1 forces (l+k)-planes into (l'+k)-planes.
    """

    theorem_id = "FaranType"
    description = "l-planes to l'-planes: linear, degenerate image, or extension to larger planes"
    requires_orthogonal = False
    extensions = (1, 2)

    def __init__(self, config: Optional[Dict[str, Any]] = None, levels: Optional[List[int]] = None):
        super().__init__(config)
        self.levels = levels

    def levels_for(self, entry: CorpusEntry) -> List[int]:
        n = entry.source.n
        if self.levels is not None:
            return [l for l in self.levels if 1 <= l <= n - 1]
        return list(range(1, n - 1))

    def plane_dim(self, entry: CorpusEntry, k: int) -> int:
        """Generic projective dimension of images of k-planes; symbolic when small"""
        return entry.memo(("plane-dim", k, self.config['plane_trials']),
                          lambda: self._measure(entry, k))

    def _measure(self, entry: CorpusEntry, k: int) -> int:
        F = entry.map
        sampled = generic_plane_image_dim(F, k, self.config['plane_trials'], entry.seed,
                                          self.config['height'])
        if (k + 1) * F.source.n > SYMBOLIC_VARIABLES or F.degree > SYMBOLIC_MAX_DEGREE:
            return sampled
        try:
            value = symbolic_plane_image_dim(F, k)
        except IndeterminacyError:
            value = -1
        if sampled > value:
            logger.error(f"sampled plane image dimension {sampled} exceeds the generic {value}")
        return max(sampled, value)

    def branches(self, entry: CorpusEntry, level: int) -> List[str]:
        image = self.plane_dim(entry, level)
        names = []
        if 0 <= image <= level:
            names.append("linear-or-span" if image == level else "span")
        if level <= image <= 2 * level - 1 and level + 1 <= entry.source.n - 1:
            names.append("extension")
        return names

    def hypothesis(self, entry: CorpusEntry) -> bool:
        fired = False
        for level in self.levels_for(entry):
            names = self.branches(entry, level)
            self.tally("vacuous-level" if not names else "active-level")
            fired = fired or bool(names)
        return fired

    def check_instance(self, entry: CorpusEntry) -> Optional[str]:
        F = entry.map
        n = F.source.n
        for level in self.levels_for(entry):
            image = self.plane_dim(entry, level)
            for name in self.branches(entry, level):
                self.tally(f"{name}-branch")
                if name == "span":
                    whole = image_span(F).projective_dim
                    if whole > image:
                        return f"l={level}, l'={image}: image spans a {whole}-plane"
                elif name == "linear-or-span":
                    whole = image_span(F).projective_dim
                    if whole > image and not is_linear(F):
                        return f"l={level}, l'={image}: map not linear and image spans a {whole}-plane"
                else:
                    for k in self.extensions:
                        if level + k > n - 1:
                            break
                        larger = self.plane_dim(entry, level + k)
                        if larger > image + k:
                            return (f"l={level}, l'={image}: {level + k}-planes map into "
                                    f"{larger}-planes, bound {image + k}")
        return None

    def record_extra(self, entry: CorpusEntry) -> Dict[str, Any]:
        dims = {str(level): self.plane_dim(entry, level) for level in self.levels_for(entry)}
        return {"plane_image_dims": dims}


def check_faran_dichotomy(F: RationalMap, level: int, trials: int = FuzzConfig.DEFAULT_PLANE_TRIALS,
                          seed: int = 0) -> TheoremReport:
    config = FuzzConfig.create_custom_config(plane_trials=trials, seed=seed)
    checker = FaranTypeChecker(config, levels=[level])
    return checker.check_corpus([CorpusEntry(F, frozenset(), seed, orthogonal=None)])
