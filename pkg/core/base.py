# base.py
import json
import logging
import os
import re
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

from core.config import FuzzConfig
from core.corpus import CorpusEntry, build_corpora
from core.errors import CorpusError, HyperquadricError, UnsupportedSignatureError
from core.maps import RationalMap
from core.serialize import dumps, map_to_descriptor, with_schema

logger = logging.getLogger(__name__)

VERIFIED = "verified"
VACUOUS = "vacuous"
FAILED = "counterexample"


@dataclass
class TheoremReport:
    """
    Outcome of one checker over one corpus. Reports over disjoint corpora
    merge by adding counts and concatenating records.
    """
    theorem: str
    instances: int = 0
    satisfied: int = 0
    verified: int = 0
    vacuous: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    records: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.verified == self.satisfied

    def merge(self, other: "TheoremReport") -> "TheoremReport":
        if other.theorem != self.theorem:
            raise ValueError(f"cannot merge {other.theorem} into {self.theorem}")
        return TheoremReport(
            self.theorem,
            self.instances + other.instances,
            self.satisfied + other.satisfied,
            self.verified + other.verified,
            self.vacuous + other.vacuous,
            self.counterexamples + other.counterexamples,
            self.records + other.records,
            dict(Counter(self.details) + Counter(other.details)),
        )

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "theorem": self.theorem,
            "instances": self.instances,
            "satisfied": self.satisfied,
            "verified": self.verified,
            "vacuous": self.vacuous,
            "records": self.records,
            "details": dict(sorted(self.details.items())),
        }
        if self.counterexamples:
            data["counterexamples"] = self.counterexamples
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TheoremReport":
        return cls(
            data["theorem"],
            data.get("instances", 0),
            data.get("satisfied", 0),
            data.get("verified", 0),
            data.get("vacuous", 0),
            list(data.get("counterexamples", [])),
            list(data.get("records", [])),
            dict(data.get("details", {})),
        )


class BaseTheoremChecker(ABC):
    """
    Base class for theorem checkers with common functionality: the corpus
    loop, hypothesis gating, counterexample payloads and report persistence.
    """

    theorem_id: str = ""
    description: str = ""
    requires_orthogonal: bool = True
    # named corpora (see core.corpus.CORPUS_KINDS) this checker runs on by default
    corpora: Tuple[str, ...] = ("default",)

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or FuzzConfig.create_custom_config()
        self.details: Counter = Counter()

    # -- corpus -------------------------------------------------------------

    def build_corpus(self) -> List[CorpusEntry]:
        """The corpus this checker runs on by default"""
        return self.select_corpus(build_corpora(self.corpora, self.config))

    def select_corpus(self, corpora: Dict[str, List[CorpusEntry]]) -> List[CorpusEntry]:
        """This checker's share of corpora built once for several checkers"""
        return [entry for kind in self.corpora for entry in corpora[kind]]

    def verify_precondition(self, entry: CorpusEntry) -> None:
        if not self.requires_orthogonal:
            return
        try:
            orthogonal = entry.orthogonality().orthogonal
        except UnsupportedSignatureError as e:
            raise CorpusError(f"corpus map {entry.label} cannot be tested: {e}")
        if not orthogonal:
            raise CorpusError(f"corpus map {entry.label} {entry.source.label()}->"
                              f"{entry.target.label()} is not orthogonal")

    def classification(self, entry: CorpusEntry):
        return entry.classification(self.config['retries'])

    def sign_report(self, entry: CorpusEntry):
        return entry.sign_report(self.config['sign_trials'], self.config['height'])

    def tally(self, key: str, amount: int = 1) -> None:
        self.details[key] += amount

    # -- checking -----------------------------------------------------------

    def counterexample(self, entry: CorpusEntry, reason: str) -> Dict[str, Any]:
        payload = {**entry.summary(), "map": map_to_descriptor(entry.map), "reason": reason}
        try:
            payload["verdict"] = self.classification(entry).verdict.value
        except HyperquadricError as e:
            payload["verdict"] = f"error: {e}"
        return payload

    def check_corpus(self, corpus: List[CorpusEntry]) -> TheoremReport:
        """Run the checker over every entry; vacuous runs are counted separately"""
        report = TheoremReport(self.theorem_id)
        self.details = Counter()
        for entry in corpus:
            self.verify_precondition(entry)
            report.instances += 1
            record = entry.summary()
            if not self.hypothesis(entry):
                report.vacuous += 1
                report.records.append({**record, "status": VACUOUS})
                continue
            report.satisfied += 1
            reason = self.check_instance(entry)
            if reason is None:
                report.verified += 1
                status = VERIFIED
            else:
                logger.warning(f"{self.theorem_id}: counterexample {entry.label} "
                               f"{entry.source.label()}->{entry.target.label()}: {reason}")
                report.counterexamples.append(self.counterexample(entry, reason))
                status = FAILED
            report.records.append({**record, "status": status, **self.record_extra(entry)})
        report.details = dict(self.details)
        logger.info(f"{self.theorem_id}: {report.verified}/{report.satisfied} verified, "
                    f"{report.vacuous} vacuous")
        return report

    def check_map(self, F: RationalMap, seed: int = 0) -> TheoremReport:
        return self.check_corpus([CorpusEntry(F, frozenset(), seed, orthogonal=None)])

    def record_extra(self, entry: CorpusEntry) -> Dict[str, Any]:
        """Per-instance fields for the report; the verdict by default"""
        return {"verdict": self.classification(entry).verdict.value}

    # -- persistence --------------------------------------------------------

    def save_to_json(self, report: TheoremReport, filename: str = None,
                     directory: str = None, stamp: bool = False) -> str:
        """Save a report to a JSON file with Unicode support

        The file name and contents only carry a timestamp when ``stamp`` is set,
        so repeated seeded runs write byte-identical reports.
        """
        directory = directory or self.config['data_dir']
        os.makedirs(directory, exist_ok=True)

        now = datetime.now()
        if not filename:
            safe_name = re.sub(r'[^\w\s-]', '', self.theorem_id.lower())
            suffix = f"_{now.strftime('%Y%m%d_%H%M%S')}" if stamp else ""
            filename = f"{safe_name}_report{suffix}.json"

        filepath = os.path.join(directory, filename)
        data = {
            "seed": self.config['seed'],
            "report": report.to_dict(),
        }
        if stamp:
            data["checked_at"] = now.isoformat()
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(dumps(with_schema(data)))

        print(f"Report saved to {filepath}")
        return filepath

    @staticmethod
    def load_from_json(filename: str) -> Optional[Dict[str, Any]]:
        """Load a saved report"""
        try:
            with open(filename, 'r', encoding='utf-8') as f:
                return json.load(f)
        except FileNotFoundError:
            print(f"File {filename} not found.")
            return None
        except json.JSONDecodeError as e:
            print(f"Error loading JSON file: {e}")
            return None

    def print_report(self, report: TheoremReport, limit: int = 5) -> None:
        """Print a report in a formatted way"""
        print(f"\n{self.theorem_id}: {self.description}")
        print("=" * 80)
        print(f"   Instances:  {report.instances}")
        print(f"   Hypothesis: {report.satisfied}")
        print(f"   Verified:   {report.verified}")
        print(f"   Vacuous:    {report.vacuous}")
        for key, value in sorted(report.details.items()):
            print(f"   {key}: {value}")
        if not report.counterexamples:
            print("   No counterexamples.")
            return
        print(f"   Counterexamples: {len(report.counterexamples)}")
        for i, payload in enumerate(report.counterexamples[:limit], 1):
            print(f"{i}. {payload['label']} {payload['source']} -> {payload['target']}")
            print(f"   Verdict: {payload['verdict']}")
            print(f"   Reason: {payload['reason']}")
            print(f"   Components: {payload['map']['components']}")

    def run_complete_check(self, corpus: Optional[List[CorpusEntry]] = None,
                           save: bool = True) -> TheoremReport:
        """Build the corpus, check it, print and optionally save the report"""
        print(f"Checking {self.theorem_id}...")
        corpus = self.build_corpus() if corpus is None else corpus
        if not corpus:
            print("Empty corpus, nothing to check.")
            return TheoremReport(self.theorem_id)

        report = self.check_corpus(corpus)
        self.print_report(report)

        if save:
            filename = self.save_to_json(report)
            loaded = self.load_from_json(filename)
            if loaded:
                print(f"Reloaded report with {loaded['report']['instances']} instances")
        return report

    # Abstract methods that must be implemented by subclasses
    @abstractmethod
    def hypothesis(self, entry: CorpusEntry) -> bool:
        """Whether the statement applies to this entry"""
        pass

    @abstractmethod
    def check_instance(self, entry: CorpusEntry) -> Optional[str]:
        """None when the conclusion holds, otherwise the reason it fails"""
        pass
