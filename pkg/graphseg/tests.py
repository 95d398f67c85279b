import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from graphseg.cli import dispatch, resolve


class DispatchTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.root = Path(self.directory.name)
        self.corpus = self.root / 'train.txt'
        self.corpus.write_text('武汉 市长\n长江 大桥\n', encoding='utf-8')

    def test_no_arguments(self):
        self.assertEqual(dispatch(['manage.py']), 2)

    def test_unknown_verb(self):
        self.assertEqual(dispatch(['manage.py', 'frobnicate']), 2)

    def test_verbs_map_onto_commands(self):
        self.assertEqual(resolve('build-lexicon'), 'build_lexicon')
        self.assertEqual(resolve('grad_check'), 'grad_check')
        self.assertEqual(resolve('test'), 'test')
        self.assertIsNone(resolve('runserver'))

    def test_unknown_config_key(self):
        config = self.root / 'options.env'
        config.write_text('bogus=1\n', encoding='utf-8')
        self.assertEqual(dispatch(['manage.py', 'build-lexicon', str(self.corpus), '--config', str(config)]), 2)

    def test_invalid_config_value(self):
        config = self.root / 'options.env'
        config.write_text('lr=-1\n', encoding='utf-8')
        self.assertEqual(dispatch(['manage.py', 'train', str(self.corpus), '--config', str(config),
                                   '--output', str(self.root / 'run')]), 2)

    def test_io_failure(self):
        self.assertEqual(dispatch(['manage.py', 'build-lexicon', str(self.root / 'absent.txt')]), 1)

    def test_graph_without_relations_is_a_usage_error(self):
        self.assertEqual(dispatch(['manage.py', 'inspect-graph', str(self.corpus), '--no-syntax', '--no-cwn']), 2)


class CommandTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.root = Path(self.directory.name)
        self.corpus = self.root / 'train.txt'
        self.corpus.write_text('武汉 市长\n长江 大桥\n武汉 长江 大桥\n', encoding='utf-8')

    def run_command(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, **options)
        return out.getvalue()

    def test_build_lexicon(self):
        lines = self.run_command('build_lexicon', str(self.corpus)).splitlines()
        self.assertEqual(lines[:3], ['大桥\t2', '武汉\t2', '长江\t2'])

    def test_lexicon_file_gets_a_config_echo(self):
        output = self.root / 'lexicon.tsv'
        self.run_command('build_lexicon', str(self.corpus), output=str(output))
        echo = json.loads(Path(f'{output}.config.json').read_text(encoding='utf-8'))
        self.assertEqual(echo['corpus'], str(self.corpus))
        self.assertNotIn('verbosity', echo)

    def test_extract_ngrams(self):
        text = self.run_command('extract_ngrams', str(self.corpus), max_len=2, min_freq=2, av_threshold=1)
        self.assertIn('武汉\t2\t2', text.splitlines())

    def test_extract_ngrams_rejects_zero_thresholds(self):
        with self.assertRaises(CommandError):
            self.run_command('extract_ngrams', str(self.corpus), min_freq=0)

    def test_inspect_graph(self):
        lexicon = self.root / 'lexicon.tsv'
        self.run_command('build_lexicon', str(self.corpus), output=str(lexicon))
        text = self.run_command('inspect_graph', str(self.corpus), lexicon=str(lexicon))
        self.assertTrue(text.startswith('# sentence 0\t武汉市长\n#node'))
        stats = dict(line.split('\t') for line in
                     self.run_command('inspect_graph', str(self.corpus), lexicon=str(lexicon),
                                      stats=True).splitlines())
        self.assertEqual(stats['graphs'], '3')
        self.assertEqual(stats['nodes_word'], '7')

    def test_disabled_relations_count_zero_edges(self):
        stats = dict(line.split('\t') for line in
                     self.run_command('inspect_graph', str(self.corpus), no_cwn=True, stats=True).splitlines())
        self.assertEqual(stats['edges_cwn'], '0')
        self.assertIn('edges_out', stats)
