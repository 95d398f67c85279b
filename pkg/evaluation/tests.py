import logging
import random
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from openpyxl import load_workbook

from corpus.models import Lexicon
from corpus.services.corpus_service import build_lexicon, corpus_from_lines
from evaluation.models import AblationCell, Metrics, SweepPoint
from evaluation.serializers import SweepParamsSerializer
from evaluation.services.experiments import (TestSet, ablation_grid, ablation_table, evaluate_checkpoint,
                                             is_monotonic, run_ablation, vocab_sweep)
from evaluation.services.scoring import oov_recall, score, score_corpus, score_files, score_sentence
from evaluation.utils.export_to_excel import export_ablation, export_sweep
from evaluation.utils.plotting import plot_sweep
from exceptions import EvaluationError
from graph.models import GraphConfig
from ngram.models import NgramEntry, NgramVocab
from trainer.models import TrainConfig
from trainer.services.training import TrainingData

logger = logging.getLogger(__name__)


class ScoreTests(SimpleTestCase):

    def test_partial_match(self):
        # gold a/b/cd, predicted a/bcd
        metrics = score([(0, 1), (1, 2), (2, 4)], [(0, 1), (1, 4)])
        self.assertAlmostEqual(metrics.precision, 1 / 2)
        self.assertAlmostEqual(metrics.recall, 1 / 3)
        self.assertAlmostEqual(metrics.f1, 0.4)

    def test_oov_recall(self):
        gold = [(0, 2), (2, 4), (4, 6)]
        words = ['武汉', '长江', '大桥']
        predicted = [(0, 2), (2, 4), (4, 5), (5, 6)]
        self.assertEqual(oov_recall(gold, words, predicted, Lexicon({'武汉': 1})), 0.5)

    def test_no_oov_words(self):
        metrics = score_sentence([(0, 2)], ['武汉'], [(0, 1), (1, 2)], Lexicon({'武汉': 1}))
        self.assertTrue(metrics.oov_degenerate)
        self.assertEqual(metrics.oov_recall, 1.0)

    def test_micro_average(self):
        gold = corpus_from_lines(['武汉 市长', '长江 大桥'])
        predicted = [((0, 2), (2, 4)), ((0, 1), (1, 2), (2, 4))]
        metrics = score_corpus(gold, predicted)
        self.assertEqual((metrics.gold, metrics.predicted, metrics.correct), (4, 5, 3))
        self.assertAlmostEqual(metrics.recall, 3 / 4)
        self.assertAlmostEqual(metrics.precision, 3 / 5)
        self.assertEqual(metrics.violations(), [])

    def test_mismatched_lengths(self):
        with self.assertRaises(EvaluationError):
            score([(0, 2)], [(0, 3)])
        with self.assertRaises(EvaluationError):
            score([(0, 2)], [(1, 2)])
        with self.assertRaises(EvaluationError):
            score_corpus(corpus_from_lines(['武汉']), [])

    def test_metrics_add_counts(self):
        total = Metrics(2, 2, 1, 1, 0) + Metrics(3, 2, 2, 1, 1)
        self.assertEqual(total, Metrics(5, 4, 3, 2, 1))
        self.assertEqual(total.oov_recall, 0.5)


class ScoreFilesTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.root = Path(self.directory.name)

    def write(self, name, text):
        path = self.root / name
        path.write_text(text, encoding='utf-8')
        return path

    def test_files(self):
        gold = self.write('gold.txt', '武汉 市长\n长江 大桥\n')
        predicted = self.write('pred.txt', '武汉 市长\n长江大桥\n')
        metrics = score_files(gold, predicted, Lexicon({'武汉': 1, '市长': 1}))
        self.assertEqual((metrics.correct, metrics.gold, metrics.predicted), (2, 4, 3))
        self.assertEqual(metrics.oov_recall, 0.0)

    def test_text_must_agree(self):
        gold = self.write('gold.txt', '武汉 市长\n')
        predicted = self.write('pred.txt', '武汉 市\n')
        with self.assertRaises(EvaluationError):
            score_files(gold, predicted)

    def test_command_prints_a_row(self):
        gold = self.write('gold.txt', '武 汉 市长\n')
        predicted = self.write('pred.txt', '武 汉市长\n')
        out = StringIO()
        call_command('evaluate', str(gold), pred=str(predicted), stdout=out)
        header, row, record = out.getvalue().splitlines()
        self.assertEqual(header.split('\t'), ['precision', 'recall', 'f1', 'oov_recall', 'oov_degenerate'])
        self.assertEqual(row.split('\t')[:3], ['0.5000', '0.3333', '0.4000'])
        self.assertIn('"kind": "evaluation"', record)

    def test_command_needs_one_source(self):
        gold = self.write('gold.txt', '武 汉\n')
        with self.assertRaises(CommandError):
            call_command('evaluate', str(gold), stdout=StringIO())


LINES = ['武汉 市长 说', '长江 大桥 很 长', '武汉 市 长江 大桥', '大桥 在 武汉', '长江 很 长', '市长 说']
TEST_LINES = ['武汉 长江 大桥', '市长 在 说']
KNOWN_WORDS = ['我们', '喜欢', '北京', '学习', '人']
OOV_WORDS = ['电脑', '天气']


class ExperimentTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.root = Path(self.directory.name)
        train = corpus_from_lines(LINES)
        self.data = TrainingData(train=train, dev=corpus_from_lines(TEST_LINES, split='dev'),
                                 lexicon=build_lexicon(train),
                                 vocab=NgramVocab({'长江大桥': NgramEntry(5, 2), '在说': NgramEntry(5, 2)}))
        self.test = TestSet(corpus=corpus_from_lines(TEST_LINES, split='test'))
        self.config = TrainConfig(learning_rate=0.1, batch_size=2, epochs=1, char_dim=4, hidden_dim=4, layers=1,
                                  graph=GraphConfig())

    def test_subgraph_grid(self):
        cells = run_ablation(ablation_grid('subgraph'), [1, 2], self.config, self.data, self.test, self.root)
        self.assertEqual([cell.name for cell in cells], ['full', 'w/o syntax', 'w/o cwn'])
        for cell in cells:
            self.assertEqual(len(cell.runs), 2)
            self.assertAlmostEqual(cell.f1, sum(run['f1'] for run in cell.runs) / 2)
        self.assertGreater(cells[0].graph_stats['edges_cwn'], 0)
        self.assertEqual(cells[2].graph_stats['edges_cwn'], 0)
        self.assertTrue((self.root / 'w-o-cwn' / 'seed-2' / 'best.ckpt').is_file())

    def test_lexicon_grid_drops_match_nodes(self):
        cells = run_ablation(ablation_grid('lexicon'), [1], self.config, self.data, self.test, self.root)
        full, without_n, without_d = (cell.graph_stats for cell in cells)
        self.assertGreater(full['nodes_ngram'], 0)
        self.assertEqual(without_n['nodes_ngram'], 0)
        self.assertEqual(without_n['nodes_word'], full['nodes_word'])
        self.assertEqual(without_d['nodes_word'], 0)
        self.assertGreater(without_d['nodes_ngram'], 0)
        for cell in cells:
            self.assertTrue(0.0 <= cell.oov_recall <= 1.0)

    def test_ablation_table_reports_disabled_relations(self):
        cells = run_ablation(ablation_grid('subgraph'), [1], self.config, self.data, self.test, self.root)
        header, *rows = ablation_table(cells).splitlines()
        columns = header.split('\t')
        self.assertEqual(columns[:4], ['config', 'f1', 'oov_recall', 'seeds'])
        self.assertIn('edges_cwn', columns)
        without_cwn = dict(zip(columns, rows[2].split('\t')))
        self.assertEqual(without_cwn['config'], 'w/o cwn')
        self.assertEqual(without_cwn['edges_cwn'], '0')

    def test_oov_words_through_the_ngram_vocabulary(self):
        rng = random.Random(3)
        lines = [' '.join(rng.choice(KNOWN_WORDS) for _ in range(rng.randint(3, 5))) for _ in range(30)]
        test_lines = [f'{rng.choice(KNOWN_WORDS)} {rng.choice(OOV_WORDS)} {rng.choice(KNOWN_WORDS)}'
                      for _ in range(12)]
        train = corpus_from_lines(lines)
        lexicon = build_lexicon(train)
        test = corpus_from_lines(test_lines, split='test')
        test_words = [word for item in test for word in item.words()]
        self.assertGreater(sum(word not in lexicon for word in test_words) / len(test_words), 0)
        vocab = NgramVocab({word: NgramEntry(5, 2) for word in OOV_WORDS + ['我们喜欢']})
        data = TrainingData(train=train, dev=corpus_from_lines(lines[:6], split='dev'), lexicon=lexicon,
                            vocab=vocab)
        config = TrainConfig(learning_rate=0.01, optimizer='adam', batch_size=5, epochs=3, char_dim=8,
                             hidden_dim=8, layers=1, graph=GraphConfig())
        full, without_n = run_ablation(ablation_grid('lexicon')[:2], [1, 2, 3], config, data, TestSet(corpus=test),
                                       self.root)
        for cell in (full, without_n):
            self.assertEqual(len(cell.runs), 3)
            self.assertTrue(0.0 <= cell.oov_recall <= 1.0)
        self.assertGreater(full.graph_stats['nodes_ngram'], 0)
        self.assertEqual(without_n.graph_stats['nodes_ngram'], 0)
        logger.info('OOV recall %.4f with n-grams, %.4f without (gap %.4f)',
                    full.oov_recall, without_n.oov_recall, full.oov_recall - without_n.oov_recall)

    def test_grid_errors(self):
        with self.assertRaises(EvaluationError):
            ablation_grid('parsers')
        with self.assertRaises(EvaluationError):
            ablation_grid('unknown')
        with self.assertRaises(EvaluationError):
            run_ablation(ablation_grid('hgn'), [], self.config, self.data, self.test, self.root)

    def test_reinfer_sweep(self):
        points = vocab_sweep([1.0, 0.5], [1], self.config, self.data, self.test, self.root, mode='reinfer')
        self.assertEqual([p.fraction for p in points], [0.5, 1.0])
        self.assertEqual([p.vocab_size for p in points], [1, 2])
        full, _ = evaluate_checkpoint(self.root / 'full' / 'seed-1' / 'best.ckpt', self.test)
        self.assertEqual(points[-1].f1, full.f1)
        self.assertEqual(points[-1].oov_recall, full.oov_recall)

    def test_unknown_sweep_mode(self):
        with self.assertRaises(EvaluationError):
            vocab_sweep([1.0], [1], self.config, self.data, self.test, self.root, mode='sideways')


class ReportTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.root = Path(self.directory.name)
        self.points = [SweepPoint(0.5, 10, 0.9, 0.4, []), SweepPoint(1.0, 20, 0.92, 0.5, [])]

    def test_monotonic(self):
        self.assertTrue(is_monotonic(self.points))
        self.assertFalse(is_monotonic([SweepPoint(0.5, 10, 0.9, 0.6, []), SweepPoint(1.0, 20, 0.9, 0.5, [])]))

    def test_ablation_workbook(self):
        cells = [AblationCell('full', (1, 2), 0.9512, 0.7, [], {'edges_cwn': 30}),
                 AblationCell('w/o cwn', (1, 2), 0.9, 0.6, [], {})]
        path = export_ablation(cells, self.root / 'ablation.xlsx', 'subgraph')
        sheet = load_workbook(path).active
        self.assertEqual(sheet.title, 'Subgraph')
        self.assertEqual([c.value for c in sheet[1]], ['#', 'Configuration', 'F1', 'R_oov', 'Seeds', 'edges_cwn'])
        self.assertEqual([c.value for c in sheet[2]], [1, 'full', 0.9512, 0.7, '1,2', 30])

    def test_sweep_workbook_has_a_footer(self):
        path = export_sweep(self.points, self.root / 'sweep.xlsx', monotonic=True)
        sheet = load_workbook(path).active
        self.assertEqual(sheet['A4'].value, 'Monotonic R_oov')
        self.assertEqual(sheet['C4'].value, 'yes')
        self.assertIn('A4:B4', [str(merged) for merged in sheet.merged_cells.ranges])

    def test_plot(self):
        path = plot_sweep(self.points, self.root / 'sweep.png')
        self.assertGreater(Path(path).stat().st_size, 0)

    def test_sweep_parameters(self):
        self.assertTrue(SweepParamsSerializer(data={'fractions': [0.5, 1.0], 'seeds': [1],
                                                    'mode': 'retrain'}).is_valid())
        self.assertFalse(SweepParamsSerializer(data={'fractions': [0.5, 1.5], 'seeds': [1],
                                                     'mode': 'retrain'}).is_valid())
        self.assertFalse(SweepParamsSerializer(data={'fractions': [0.5], 'seeds': [],
                                                     'mode': 'retrain'}).is_valid())
