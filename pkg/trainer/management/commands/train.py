import logging

from graphseg.commands import SegmenterCommand
from trainer.options import TRAINING_SETTING_DEFAULTS, add_data_arguments, add_training_arguments, \
    data_arguments, training_config
from trainer.services.inputs import load_training_data
from trainer.services.training import train

logger = logging.getLogger(__name__)


class Command(SegmenterCommand):
    help = 'Train a segmenter; writes best.ckpt, last.ckpt and train.log.jsonl to the output directory'
    model_flags = True
    setting_defaults = dict(TRAINING_SETTING_DEFAULTS, output='TRAINER_OUTPUT_DIR')

    def add_command_arguments(self, parser):
        add_data_arguments(parser)
        add_training_arguments(parser)
        parser.add_argument('--output', '-o', default=None, help='output directory')
        parser.add_argument('--resume', action='store_true', help='continue from last.ckpt in the output directory')

    def run(self, **options):
        config = training_config(self, options)
        data = load_training_data(options['corpus'], config, **data_arguments(options))
        self.log_config()
        result = train(config, data, options['output'], resume=options['resume'],
                       effective=self.effective_config)
        self.write_config_echo(result.best_path, {'train_config': config.as_dict()})
        logger.info('best dev F1 %.4f at epoch %d of %d%s', result.best_f1, result.best_epoch,
                    result.epochs_run, ' (stopped early)' if result.stopped_early else '')
        self.emit(f'{result.best_path}\n')
