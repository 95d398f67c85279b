import logging

from corpus.services.corpus_service import LexiconService, build_lexicon, load_segmented_corpus, oov_rate
from graphseg.commands import SegmenterCommand

logger = logging.getLogger(__name__)


class Command(SegmenterCommand):
    help = 'Build the word lexicon of a segmented training corpus'

    def add_command_arguments(self, parser):
        parser.add_argument('corpus', help='training corpus, one sentence per line, words separated by spaces')
        parser.add_argument('--output', '-o', default=None, help='lexicon file (stdout when absent)')
        parser.add_argument('--test', default=None, help='segmented test corpus whose OOV rate is logged')

    def run(self, **options):
        train = load_segmented_corpus(options['corpus'])
        lexicon = build_lexicon(train)
        logger.info('%d distinct words, %d tokens', len(lexicon), lexicon.total)
        if options['test']:
            test = load_segmented_corpus(options['test'], split='test')
            logger.info('OOV rate of %s: %.4f', options['test'], oov_rate(test, lexicon))
        if options['output']:
            LexiconService.write(lexicon, options['output'])
            self.write_config_echo(options['output'])
        else:
            self.log_config()
            self.emit(''.join(f'{word}\t{count}\n' for word, count in lexicon.ordered()))
