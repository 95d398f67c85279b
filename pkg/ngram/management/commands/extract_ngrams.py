import logging

from corpus.services.corpus_service import load_raw_sentences, load_segmented_corpus
from graphseg.commands import SegmenterCommand, UsageError
from ngram.services.accessor_variety import VocabService, extract_ngrams

logger = logging.getLogger(__name__)


class Command(SegmenterCommand):
    help = 'Extract the accessor-variety n-gram vocabulary of one or more corpora'
    setting_defaults = {
        'max_len': 'NGRAM_MAX_LENGTH',
        'min_freq': 'NGRAM_MIN_FREQUENCY',
        'av_threshold': 'NGRAM_AV_THRESHOLD',
        'workers': 'TRAINER_WORKERS',
    }

    def add_command_arguments(self, parser):
        parser.add_argument('corpora', nargs='+', help='input corpora; n-grams are counted over all of them')
        parser.add_argument('--raw', action='store_true', help='inputs are unsegmented, one sentence per line')
        parser.add_argument('--max-len', dest='max_len', type=int, default=None)
        parser.add_argument('--min-freq', dest='min_freq', type=int, default=None)
        parser.add_argument('--av-threshold', dest='av_threshold', type=int, default=None)
        parser.add_argument('--output', '-o', default=None, help='vocabulary file (stdout when absent)')

    def run(self, **options):
        for name in ('max_len', 'min_freq', 'av_threshold'):
            if options[name] < 1:
                raise UsageError(f'--{name.replace("_", "-")} must be at least 1')
        corpora = []
        for path in options['corpora']:
            if options['raw']:
                corpora.append(load_raw_sentences(path))
            else:
                corpora.append(load_segmented_corpus(path))
        vocab = extract_ngrams(corpora, max_length=options['max_len'], min_frequency=options['min_freq'],
                               av_threshold=options['av_threshold'], workers=options['workers'])
        if options['output']:
            VocabService.write(vocab, options['output'])
            self.write_config_echo(options['output'])
        else:
            self.log_config()
            self.emit(''.join(f'{key}\t{vocab[key].frequency}\t{vocab[key].av}\n' for key in vocab))
