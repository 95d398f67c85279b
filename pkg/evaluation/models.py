from dataclasses import dataclass


@dataclass
class Metrics:
    """Word-level counts; the rates are derived from them, so summing Metrics micro-averages."""
    gold: int = 0
    predicted: int = 0
    correct: int = 0
    oov_gold: int = 0
    oov_correct: int = 0

    def __add__(self, other):
        return Metrics(
            gold=self.gold + other.gold,
            predicted=self.predicted + other.predicted,
            correct=self.correct + other.correct,
            oov_gold=self.oov_gold + other.oov_gold,
            oov_correct=self.oov_correct + other.oov_correct,
        )

    @property
    def precision(self):
        return self.correct / self.predicted if self.predicted else 0.0

    @property
    def recall(self):
        return self.correct / self.gold if self.gold else 0.0

    @property
    def f1(self):
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r > 0 else 0.0

    @property
    def oov_degenerate(self):
        return self.oov_gold == 0

    @property
    def oov_recall(self):
        # no OOV gold words: reported as 1.0 together with oov_degenerate
        return self.oov_correct / self.oov_gold if self.oov_gold else 1.0

    def violations(self):
        bad = []
        if self.correct > min(self.gold, self.predicted):
            bad.append('correct exceeds gold or predicted')
        if self.oov_correct > self.oov_gold:
            bad.append('oov_correct exceeds oov_gold')
        if self.oov_gold > self.gold:
            bad.append('oov_gold exceeds gold')
        return bad

    def as_dict(self):
        return {
            'precision': self.precision,
            'recall': self.recall,
            'f1': self.f1,
            'oov_recall': self.oov_recall,
            'oov_degenerate': self.oov_degenerate,
            'gold': self.gold,
            'predicted': self.predicted,
            'correct': self.correct,
            'oov_gold': self.oov_gold,
            'oov_correct': self.oov_correct,
        }


@dataclass
class AblationCell:
    """Mean scores of one grid configuration over the seed set."""
    name: str
    seeds: tuple
    f1: float
    oov_recall: float
    runs: list
    graph_stats: dict

    def as_dict(self):
        return {
            'config': self.name,
            'seeds': list(self.seeds),
            'f1': self.f1,
            'oov_recall': self.oov_recall,
            'runs': self.runs,
            'graph_stats': self.graph_stats,
        }


@dataclass
class SweepPoint:
    fraction: float
    vocab_size: int
    f1: float
    oov_recall: float
    runs: list
