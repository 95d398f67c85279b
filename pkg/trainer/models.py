from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from graph.models import GraphConfig

OPTIMIZERS = ('sgd', 'adam')


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.05
    batch_size: int = 16
    epochs: int = 30
    clip_norm: float = 5.0
    seed: int = 1
    patience: int = 5
    optimizer: str = 'sgd'
    decay: float = 0.0
    char_dim: int = 64
    hidden_dim: int = 64
    layers: int = 2
    use_hgn: bool = True
    dev_ratio: float = 0.1
    max_sentence_length: Optional[int] = 256
    workers: int = 1
    constrain_legal: bool = True
    graph: GraphConfig = field(default_factory=GraphConfig)

    def as_dict(self):
        data = {f.name: getattr(self, f.name) for f in fields(self) if f.name != 'graph'}
        data['graph'] = self.graph.as_dict()
        return data

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        graph = GraphConfig(**data.pop('graph', {}))
        known = {f.name for f in fields(cls)}
        return cls(graph=graph, **{k: v for k, v in data.items() if k in known})


@dataclass
class TrainingResult:
    output_dir: Path
    best_path: Path
    last_path: Path
    log_path: Path
    best_f1: float
    best_epoch: int
    epochs_run: int
    stopped_early: bool
    history: list = field(default_factory=list)
