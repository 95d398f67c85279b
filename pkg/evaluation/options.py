"""Options shared by the ablate and sweep commands."""
from django.conf import settings

from corpus.services.corpus_service import full_sentences, load_segmented_corpus
from evaluation.services.experiments import TestSet
from graphseg.commands import UsageError
from parses.services.conll_reader import load_parses
from trainer.options import TRAINING_SETTING_DEFAULTS
from trainer.services.inputs import load_external

EXPERIMENT_SETTING_DEFAULTS = dict(TRAINING_SETTING_DEFAULTS, output='TRAINER_OUTPUT_DIR')


def comma_list(cast):
    def parse(value):
        try:
            return [cast(item) for item in value.split(',') if item.strip()]
        except ValueError:
            raise UsageError(f'bad list {value!r}')
    return parse


def add_test_arguments(parser):
    parser.add_argument('--test', default=None, help='segmented test corpus (default: the dev split)')
    parser.add_argument('--test-parses', dest='test_parses', default=None)
    parser.add_argument('--test-ext-emb', dest='test_ext_emb', default=None)
    parser.add_argument('--seeds', default=None, help='comma-separated seeds, e.g. 1,2,3')
    parser.add_argument('--output', '-o', default=None, help='directory for the per-run checkpoints')
    parser.add_argument('--xlsx', default=None, help='also write the table as an Excel workbook')


def seeds(options):
    if options['seeds']:
        return comma_list(int)(options['seeds'])
    return list(settings.EVALUATION_SEEDS)


def load_test_set(options, data):
    """The scored data: the --test file when given, the dev split otherwise."""
    if not options['test']:
        return TestSet(corpus=data.dev, parses=data.dev_parses, external=data.dev_external)
    corpus = load_segmented_corpus(options['test'], split='test')
    external, _ = load_external(options['test_ext_emb'], corpus)
    parses = load_parses(options['test_parses'], full_sentences(corpus)) if options['test_parses'] else None
    return TestSet(corpus=corpus, parses=parses, external=external)
