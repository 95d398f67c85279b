import json
import logging
from pathlib import Path

from corpus.services.corpus_service import full_sentences
from evaluation.options import EXPERIMENT_SETTING_DEFAULTS, add_test_arguments, load_test_set, seeds
from evaluation.serializers import AblationParamsSerializer, AblationRowSerializer
from evaluation.services.experiments import GRIDS, ablation_grid, ablation_table, run_ablation
from evaluation.utils.export_to_excel import export_ablation
from graphseg.commands import SegmenterCommand, UsageError
from parses.services.conll_reader import load_parses
from trainer.options import add_data_arguments, add_training_arguments, data_arguments, training_config
from trainer.services.inputs import load_training_data

logger = logging.getLogger(__name__)


def parser_pairs(values, train_sentences=None, test_sentences=None):
    """NAME=TRAIN.conll,TEST.conll arguments as {name: (train parses, test parses)}.

    Each file is aligned against the whole sentences it parses, given as {ordinal: characters}.
    """
    pairs = {}
    for value in values:
        name, sep, files = value.partition('=')
        paths = files.split(',')
        if not sep or not name or len(paths) != 2 or not all(paths):
            raise UsageError(f'--parser expects NAME=TRAIN.conll,TEST.conll, got {value!r}')
        pairs[name] = (load_parses(paths[0], train_sentences), load_parses(paths[1], test_sentences))
    return pairs


class Command(SegmenterCommand):
    help = 'Train and score every cell of an ablation grid over a set of seeds'
    model_flags = True
    setting_defaults = EXPERIMENT_SETTING_DEFAULTS

    def add_command_arguments(self, parser):
        add_data_arguments(parser)
        add_training_arguments(parser)
        add_test_arguments(parser)
        parser.add_argument('--grid', choices=GRIDS, default=None, help='which ablation to run')
        parser.add_argument('--parser', dest='parser_files', action='append', default=[],
                            help='NAME=TRAIN.conll,TEST.conll for the parsers grid; repeatable')

    def run(self, **options):
        params = AblationParamsSerializer(data={'grid': options['grid'], 'seeds': seeds(options)})
        params.is_valid(raise_exception=True)
        grid, seed_list = params.validated_data['grid'], params.validated_data['seeds']

        config = training_config(self, options)
        data = load_training_data(options['corpus'], config, **data_arguments(options))
        test = load_test_set(options, data)
        # without --dev the dev sentences are lines of the training file
        train_sentences = full_sentences(data.train) if options['dev'] else full_sentences(data.train, data.dev)
        test_sentences = full_sentences(test.corpus) if options['test'] or options['dev'] else train_sentences
        specs = ablation_grid(grid, parser_pairs(options['parser_files'], train_sentences, test_sentences))
        self.log_config()

        output = Path(options['output']) / f'ablate-{grid}'
        output.mkdir(parents=True, exist_ok=True)
        cells = run_ablation(specs, seed_list, config, data, test, output)

        table = ablation_table(cells)
        (output / 'ablation.tsv').write_text(table, encoding='utf-8')
        with open(output / 'ablation.jsonl', 'w', encoding='utf-8') as handle:
            for cell in cells:
                record = AblationRowSerializer(cell.as_dict()).data
                handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + '\n')
        self.write_config_echo(output / 'ablation.tsv')
        if options['xlsx']:
            export_ablation(cells, options['xlsx'], grid)
            logger.info('wrote %s', options['xlsx'])
        self.emit(table)
