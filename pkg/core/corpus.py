# corpus.py
"""
Deterministic corpora of maps for the theorem checkers.

The default corpus covers sources (r, s) with r, s in {1, 2, 3} and a few
degenerate sources with t in {1, 2}; targets have t' in {0, 1, 2} and n'
capped by ``max_dim``, degrees up to ``max_degree``.
Every default entry is orthogonal by construction; the linear and
equivalence corpora add maps that are not.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from core.config import FuzzConfig
from core.errors import CapacityError, NoNullPointsError
from core.gaussian import RationalSampler, derive_seed
from core.generators import (MIXTURES, QUASI, GenSpec, example_instance, gen_linear,
                             gen_orthogonal_mixture, perturb_map, power_map, quasi_capacity,
                             whitney_map)
from core.hermitian import Signature
from core.maps import (MapClass, OrthogonalityResult, RationalMap, SignReport, Verdict,
                       classify, is_orthogonal, sign_sample)

logger = logging.getLogger(__name__)

SOURCE_RANGE = (1, 2, 3)
TARGET_T_RANGE = (0, 1, 2)
# sources with degenerate directions, after the nondegenerate grid
DEGENERATE_SOURCES = ((2, 1, 1), (1, 2, 1), (2, 2, 1), (2, 2, 2))


@dataclass
class CorpusEntry:
    """A map, the verdicts its construction promises, and cached analyses"""
    map: RationalMap
    expected: FrozenSet[Verdict] = frozenset()
    seed: int = 0
    orthogonal: Optional[bool] = True
    _cache: Dict[Any, Any] = field(default_factory=dict, repr=False, compare=False)

    @property
    def label(self) -> str:
        return self.map.label or "unlabelled"

    @property
    def source(self) -> Signature:
        return self.map.source

    @property
    def target(self) -> Signature:
        return self.map.target

    def memo(self, key: Any, compute: Callable[[], Any]) -> Any:
        """Cached analysis of this entry's map"""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def classification(self, retries: int = FuzzConfig.DEFAULT_RETRIES) -> MapClass:
        return self.memo(("classify", retries), lambda: classify(self.map, retries, self.seed))

    def orthogonality(self) -> OrthogonalityResult:
        return self.memo("orthogonality", lambda: is_orthogonal(self.map))

    def sign_report(self, trials: int, height: int) -> SignReport:
        return self.memo(("signs", trials, height),
                         lambda: sign_sample(self.map, trials, self.seed, height))

    def summary(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "source": self.source.label(),
            "target": self.target.label(),
            "degree": self.map.degree,
            "seed": self.seed,
        }


def target_cells(source: Signature, max_dim: int) -> Iterator[Signature]:
    """Targets with 1 <= r' <= r+2, 1 <= s' <= s+2, t' in {0,1,2} and n' <= max_dim"""
    for r in range(1, source.r + 3):
        for s in range(1, source.s + 3):
            for t in TARGET_T_RANGE:
                if r + s + t <= max_dim:
                    yield Signature(r, s, t)


def source_cells() -> List[Signature]:
    sources = [Signature(r, s, 0) for r in SOURCE_RANGE for s in SOURCE_RANGE]
    return sources + [Signature(*sig) for sig in DEGENERATE_SOURCES]


def corpus_cells(max_dim: int) -> List[Tuple[Signature, Signature]]:
    cells = []
    for source in source_cells():
        if source.n > max_dim:
            continue
        cells.extend((source, target) for target in target_cells(source, max_dim))
    return cells


def _constructions(source: Signature, target: Signature, max_degree: int) -> List[str]:
    labels = ["null"]
    if target.r >= source.r and target.s >= source.s:
        labels.append("standard")
    if max_degree >= 2 and quasi_capacity(source, target):
        labels.append("quasi-standard")
    return labels


def _degree_for(label: str, index: int, max_degree: int) -> int:
    if label == "standard":
        return 1
    if label == "quasi-standard":
        return 2 + index % max(1, max_degree - 1)
    return 1 + index % max_degree


def _build(source: Signature, target: Signature, label: str, degree: int, seed: int,
           height: int) -> Optional[CorpusEntry]:
    spec = GenSpec(source, target, degree, seed, height)
    try:
        F, expected = gen_orthogonal_mixture(spec, label)
    except (CapacityError, NoNullPointsError) as e:
        logger.debug(f"skipping {label} {source.label()}->{target.label()}: {e}")
        return None
    return CorpusEntry(F, expected, seed)


def _special_entries(config: Dict[str, Any]) -> List[CorpusEntry]:
    """Fixed members: the introductory example, standard maps built on swapped signatures,
    the example family and the orthogonal maps no rigidity statement covers"""
    seed = config['seed']
    entries = [CorpusEntry(example_instance(), QUASI, seed)]
    for degree in range(2, config['max_degree'] + 1):
        entries.append(CorpusEntry(power_map(degree), MIXTURES["power-map"][1], seed))
    if config['max_degree'] >= 2:
        entries.append(CorpusEntry(whitney_map(), MIXTURES["whitney"][1], seed))
    for r in SOURCE_RANGE:
        for s in SOURCE_RANGE:
            source = Signature(r, s, 0)
            if source.n + 3 <= config['max_dim'] and config['max_degree'] >= 2:
                entry = _build(source, Signature(r + 1, s + 1, 1), "example-family", 2,
                               derive_seed(seed, "example-family", r, s), config['height'])
                if entry:
                    entries.append(entry)
            if source.n + 1 <= config['max_dim']:
                entry = _build(source, Signature(r + 1, s, 0), "standard∘swap", 1,
                               derive_seed(seed, "swap", r, s), config['height'])
                if entry:
                    entries.append(entry)
    return entries


def build_default_corpus(config: Optional[Dict[str, Any]] = None) -> List[CorpusEntry]:
    """
    One map per (cell, construction, seed index); with the default caps this is
    well over five hundred orthogonal maps.
    """
    config = config or FuzzConfig.create_custom_config()
    entries = []
    for index, (source, target) in enumerate(corpus_cells(config['max_dim'])):
        for label in _constructions(source, target, config['max_degree']):
            for run in range(config['seeds']):
                degree = _degree_for(label, index + run, config['max_degree'])
                seed = derive_seed(config['seed'], source.label(), target.label(), label, run)
                entry = _build(source, target, label, degree, seed, config['height'])
                if entry:
                    entries.append(entry)
    entries.extend(_special_entries(config))
    logger.info(f"default corpus: {len(entries)} maps")
    return entries


def build_linear_corpus(config: Optional[Dict[str, Any]] = None) -> List[CorpusEntry]:
    """Random linear maps (not scaled isometries) into targets that lose r or s"""
    config = config or FuzzConfig.create_custom_config()
    entries = []
    for source, target in corpus_cells(config['max_dim']):
        if target.t > 1 or (target.r >= source.r and target.s >= source.s):
            continue
        for run in range(config['seeds']):
            seed = derive_seed(config['seed'], "linear", source.label(), target.label(), run)
            F = gen_linear(GenSpec(source, target, 1, seed, config['height']))
            entries.append(CorpusEntry(F, frozenset(), seed, orthogonal=False))
    logger.info(f"linear corpus: {len(entries)} maps")
    return entries


def build_equivalence_corpus(config: Optional[Dict[str, Any]] = None, size: int = 200,
                             pool: Optional[List[CorpusEntry]] = None) -> List[CorpusEntry]:
    """Half constructed orthogonal maps, half perturbations of them; ``pool`` is the default corpus"""
    config = config or FuzzConfig.create_custom_config()
    if pool is None:
        pool = build_default_corpus(config)
    sampler = RationalSampler(derive_seed(config['seed'], "equivalence"), config['height'])
    picked = sampler.shuffle(list(range(len(pool))))[:size]
    entries = []
    for position, index in enumerate(picked):
        base = pool[index]
        if position % 2 == 0:
            entries.append(CorpusEntry(base.map, base.expected, base.seed))
        else:
            perturbed = perturb_map(base.map, sampler.spawn("perturb", position))
            entries.append(CorpusEntry(perturbed, frozenset(), base.seed, orthogonal=None))
    logger.info(f"equivalence corpus: {len(entries)} maps")
    return entries


CORPUS_KINDS = ("default", "linear", "equivalence")


def build_corpora(kinds: Sequence[str], config: Optional[Dict[str, Any]] = None) -> Dict[str, List[CorpusEntry]]:
    """Each named corpus built once; the equivalence corpus is drawn from the default one"""
    config = config or FuzzConfig.create_custom_config()
    unknown = set(kinds) - set(CORPUS_KINDS)
    if unknown:
        raise ValueError(f"Unknown corpus {sorted(unknown)}. Available: {', '.join(CORPUS_KINDS)}")
    corpora: Dict[str, List[CorpusEntry]] = {}
    if "default" in kinds or "equivalence" in kinds:
        corpora["default"] = build_default_corpus(config)
    if "linear" in kinds:
        corpora["linear"] = build_linear_corpus(config)
    if "equivalence" in kinds:
        corpora["equivalence"] = build_equivalence_corpus(config, pool=corpora["default"])
    return {kind: corpora[kind] for kind in kinds}


def expected_verdict_mismatches(corpus: List[CorpusEntry], retries: int) -> List[Dict[str, Any]]:
    """Entries whose classification falls outside what their construction promises"""
    mismatches = []
    for entry in corpus:
        if not entry.expected:
            continue
        verdict = entry.classification(retries).verdict
        if verdict not in entry.expected:
            mismatches.append({**entry.summary(), "verdict": verdict.value,
                               "expected": sorted(v.value for v in entry.expected)})
    return mismatches


