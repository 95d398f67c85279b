import sys

from django.conf import settings

from corpus.services.corpus_service import read_utf8_lines
from graphseg.commands import SegmenterCommand
from network.encoder import load_external_embeddings
from parses.services.conll_reader import load_parses
from trainer.services.segmentation import LoadedSegmenter, input_sentences, segment_lines


class Command(SegmenterCommand):
    help = 'Segment raw text, one sentence per line, with a trained checkpoint'

    def add_command_arguments(self, parser):
        parser.add_argument('input', nargs='?', default='-', help='raw text file ("-" for stdin)')
        parser.add_argument('--model', required=True, help='checkpoint written by train')
        parser.add_argument('--parses', default=None, help='CoNLL parses, one per non-empty input line')
        parser.add_argument('--ext-emb', dest='ext_emb', default=None, help='external embeddings of the input')
        parser.add_argument('--unconstrained', action='store_true', help='allow illegal BMES transitions')
        parser.add_argument('--output', '-o', default=None, help='output file (stdout when absent)')

    def read_input(self, path):
        if path == '-':
            lines = sys.stdin.read().split('\n')
            if lines and lines[-1] == '':
                lines.pop()
            return [line.rstrip('\r') for line in lines]
        lines = read_utf8_lines(path)
        if lines and lines[-1] == '':
            lines.pop()
        return lines

    def run(self, **options):
        loaded = LoadedSegmenter.from_checkpoint(options['model'])
        lines = self.read_input(options['input'])
        sentences = input_sentences(lines)
        parses = None
        if options['parses']:
            parses = load_parses(options['parses'], [sentence.chars for sentence in sentences])
        external = None
        if options['ext_emb']:
            lengths = {ordinal: len(sentence) for ordinal, sentence in enumerate(sentences)}
            external = load_external_embeddings(options['ext_emb'], lengths)
        output = segment_lines(loaded, lines, parses, external, not options['unconstrained'],
                               settings.TRAINER_DECODE_BATCH_SIZE)
        text = ''.join(f'{line}\n' for line in output)
        if options['output']:
            with open(options['output'], 'w', encoding='utf-8', newline='\n') as handle:
                handle.write(text)
            self.write_config_echo(options['output'])
        else:
            self.log_config()
            self.emit(text)
