import json
import logging
from pathlib import Path

from django.conf import settings

from evaluation.options import EXPERIMENT_SETTING_DEFAULTS, add_test_arguments, comma_list, load_test_set, seeds
from evaluation.serializers import SWEEP_MODES, SweepParamsSerializer, SweepRowSerializer
from evaluation.services.experiments import is_monotonic, vocab_sweep
from evaluation.utils.export_to_excel import export_sweep
from evaluation.utils.plotting import plot_sweep
from graphseg.commands import SegmenterCommand
from trainer.options import add_data_arguments, add_training_arguments, data_arguments, training_config
from trainer.services.inputs import load_training_data

logger = logging.getLogger(__name__)


class Command(SegmenterCommand):
    help = 'OOV recall against the share of the n-gram vocabulary kept'
    model_flags = True
    setting_defaults = dict(EXPERIMENT_SETTING_DEFAULTS, mode='EVALUATION_SWEEP_MODE')

    def add_command_arguments(self, parser):
        add_data_arguments(parser)
        add_training_arguments(parser)
        add_test_arguments(parser)
        parser.add_argument('--fractions', default=None, help='comma-separated fractions in (0, 1]')
        parser.add_argument('--mode', choices=SWEEP_MODES, default=None,
                            help='retrain per fraction, or re-infer with one model')
        parser.add_argument('--plot', default=None, help='write a PNG of R_oov against the fraction')

    def run(self, **options):
        fractions = (comma_list(float)(options['fractions']) if options['fractions']
                     else list(settings.EVALUATION_SWEEP_FRACTIONS))
        params = SweepParamsSerializer(data={'fractions': fractions, 'seeds': seeds(options),
                                             'mode': options['mode']})
        params.is_valid(raise_exception=True)
        params = params.validated_data

        config = training_config(self, options)
        data = load_training_data(options['corpus'], config, **data_arguments(options))
        test = load_test_set(options, data)
        self.log_config()

        output = Path(options['output']) / f'sweep-{params["mode"]}'
        output.mkdir(parents=True, exist_ok=True)
        points = vocab_sweep(params['fractions'], params['seeds'], config, data, test, output,
                             mode=params['mode'], subsample_seed=settings.EVALUATION_SUBSAMPLE_SEED)
        monotonic = is_monotonic(points)
        if not monotonic:
            logger.warning('OOV recall is not monotonic in the vocabulary fraction')

        lines = ['fraction\tvocab_size\tf1\toov_recall']
        lines += [f'{p.fraction:g}\t{p.vocab_size}\t{p.f1:.4f}\t{p.oov_recall:.4f}' for p in points]
        lines.append(f'# monotonic\t{str(monotonic).lower()}')
        table = '\n'.join(lines) + '\n'
        (output / 'sweep.tsv').write_text(table, encoding='utf-8')
        with open(output / 'sweep.jsonl', 'w', encoding='utf-8') as handle:
            for point in points:
                record = SweepRowSerializer(point).data
                handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + '\n')
        self.write_config_echo(output / 'sweep.tsv')
        if options['plot']:
            plot_sweep(points, options['plot'])
        if options['xlsx']:
            export_sweep(points, options['xlsx'], monotonic)
        self.emit(table)
