"""Ablation grids and the n-gram vocabulary sweep.

Every grid cell is trained once per seed; scores are means over the seed set.
"""
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from statistics import fmean
from typing import Optional

from django.conf import settings

from evaluation.models import AblationCell, SweepPoint
from evaluation.services.scoring import score_corpus
from exceptions import EvaluationError
from graph.services.dump import graph_stats
from ngram.services.accessor_variety import subsample_vocab
from trainer.services.segmentation import LoadedSegmenter
from trainer.services.training import train

logger = logging.getLogger(__name__)

GRIDS = ('subgraph', 'lexicon', 'hgn', 'parsers')


@dataclass
class AblationSpec:
    name: str
    graph: dict = field(default_factory=dict)
    use_hgn: bool = True
    parses: Optional[object] = None
    test_parses: Optional[object] = None

    def config(self, base, seed):
        return replace(base, seed=seed, use_hgn=self.use_hgn, graph=replace(base.graph, **self.graph))


def ablation_grid(kind, parsers=None):
    """Cells of a predefined grid; parsers maps a toolkit name to its (train, test) parses."""
    if kind == 'subgraph':
        return [AblationSpec('full'),
                AblationSpec('w/o syntax', {'use_syntax_subgraph': False}),
                AblationSpec('w/o cwn', {'use_cwn_subgraph': False})]
    if kind == 'lexicon':
        return [AblationSpec('full'),
                AblationSpec('w/o N', {'use_ngrams': False}),
                AblationSpec('w/o D', {'use_lexicon': False})]
    if kind == 'hgn':
        return [AblationSpec('with HGN'), AblationSpec('without HGN', use_hgn=False)]
    if kind == 'parsers':
        if not parsers:
            raise EvaluationError('the parsers grid needs at least one parse file pair')
        return [AblationSpec(name, parses=train, test_parses=test) for name, (train, test) in parsers.items()]
    raise EvaluationError(f'unknown grid {kind!r}; expected one of {GRIDS}')


@dataclass
class TestSet:
    """Gold data the trained models are scored on, with its parses and external rows."""
    corpus: object
    parses: Optional[object] = None
    external: Optional[dict] = None


def evaluate_checkpoint(path, test, vocab=None, parses=None, constrain_legal=True):
    """Metrics of a checkpoint on the test set and the statistics of the graphs it was scored on."""
    loaded = LoadedSegmenter.from_checkpoint(path, vocab=vocab)
    instances = loaded.instances(test.corpus, parses if parses is not None else test.parses, test.external)
    predicted = loaded.predict(instances, constrain_legal, settings.TRAINER_DECODE_BATCH_SIZE)
    metrics = score_corpus(test.corpus, predicted, loaded.checkpoint.lexicon)
    config = loaded.builder.config if loaded.builder is not None else None
    stats = graph_stats((i.graph for i in instances if i.graph is not None), config)
    return metrics, stats


def run_cell(spec, seeds, base_config, data, test, output_dir):
    runs = []
    stats = {}
    for seed in seeds:
        config = spec.config(base_config, seed)
        cell_data = replace(data, parses=spec.parses, dev_parses=spec.parses) if spec.parses is not None else data
        result = train(config, cell_data, Path(output_dir) / _slug(spec.name) / f'seed-{seed}')
        metrics, stats = evaluate_checkpoint(result.best_path, test, parses=spec.test_parses,
                                             constrain_legal=config.constrain_legal)
        runs.append({'seed': seed, **metrics.as_dict()})
        logger.info('%s seed %d: F1 %.4f R_oov %.4f', spec.name, seed, metrics.f1, metrics.oov_recall)
    return AblationCell(
        name=spec.name,
        seeds=tuple(seeds),
        f1=fmean(run['f1'] for run in runs),
        oov_recall=fmean(run['oov_recall'] for run in runs),
        runs=runs,
        graph_stats=stats,
    )


def run_ablation(specs, seeds, base_config, data, test, output_dir):
    """One AblationCell per spec, each the mean over seeds."""
    if not seeds:
        raise EvaluationError('at least one seed is required')
    return [run_cell(spec, seeds, base_config, data, test, output_dir) for spec in specs]


def ablation_table(cells):
    """Tab-separated ablation rows with the graph statistics of every cell; absent statistics are 0."""
    stat_names = sorted({name for cell in cells for name in cell.graph_stats})
    lines = ['\t'.join(['config', 'f1', 'oov_recall', 'seeds'] + stat_names)]
    for cell in cells:
        values = [cell.name, f'{cell.f1:.4f}', f'{cell.oov_recall:.4f}', ','.join(map(str, cell.seeds))]
        values += [str(cell.graph_stats.get(name, 0)) for name in stat_names]
        lines.append('\t'.join(values))
    return '\n'.join(lines) + '\n'


def is_monotonic(points):
    values = [point.oov_recall for point in sorted(points, key=lambda p: p.fraction)]
    return all(a <= b for a, b in zip(values, values[1:]))


def vocab_sweep(fractions, seeds, base_config, data, test, output_dir, mode='retrain', subsample_seed=13):
    """OOV recall as a function of the share of the n-gram vocabulary kept.

    retrain trains one model per fraction and seed; reinfer trains once per
    seed with the full vocabulary and swaps the subsampled one in at test time.
    """
    if mode not in ('retrain', 'reinfer'):
        raise EvaluationError(f'unknown sweep mode {mode!r}')
    if not seeds:
        raise EvaluationError('at least one seed is required')
    subsets = {fraction: subsample_vocab(data.vocab, fraction, subsample_seed) for fraction in fractions}
    full_runs = {}
    if mode == 'reinfer':
        for seed in seeds:
            result = train(replace(base_config, seed=seed), data, Path(output_dir) / 'full' / f'seed-{seed}')
            full_runs[seed] = result.best_path

    points = []
    for fraction in sorted(fractions):
        vocab = subsets[fraction]
        runs = []
        for seed in seeds:
            if mode == 'retrain':
                result = train(replace(base_config, seed=seed), replace(data, vocab=vocab),
                               Path(output_dir) / f'fraction-{fraction:g}' / f'seed-{seed}')
                metrics, _ = evaluate_checkpoint(result.best_path, test,
                                                 constrain_legal=base_config.constrain_legal)
            else:
                metrics, _ = evaluate_checkpoint(full_runs[seed], test, vocab=vocab,
                                                 constrain_legal=base_config.constrain_legal)
            runs.append({'seed': seed, **metrics.as_dict()})
        points.append(SweepPoint(
            fraction=fraction,
            vocab_size=len(vocab),
            f1=fmean(run['f1'] for run in runs),
            oov_recall=fmean(run['oov_recall'] for run in runs),
            runs=runs,
        ))
        logger.info('fraction %.2f (%d n-grams): R_oov %.4f', fraction, len(vocab), points[-1].oov_recall)
    return points


def _slug(name):
    return ''.join(ch if ch.isalnum() else '-' for ch in name).strip('-').lower() or 'cell'
