import json
import logging

from django.conf import settings

from corpus.services.corpus_service import LexiconService, full_sentences, load_segmented_corpus
from evaluation.serializers import EvaluationRecordSerializer
from evaluation.services.scoring import score_corpus, score_files
from graphseg.commands import SegmenterCommand, UsageError
from parses.services.conll_reader import load_parses
from trainer.services.inputs import load_external
from trainer.services.segmentation import LoadedSegmenter

logger = logging.getLogger(__name__)

COLUMNS = ('precision', 'recall', 'f1', 'oov_recall', 'oov_degenerate')


class Command(SegmenterCommand):
    help = 'Score a segmentation against gold: precision, recall, F1 and OOV recall'

    def add_command_arguments(self, parser):
        parser.add_argument('gold', help='segmented gold file')
        parser.add_argument('--pred', default=None, help='segmented prediction file')
        parser.add_argument('--model', default=None, help='checkpoint to segment the gold text with')
        parser.add_argument('--lexicon', default=None,
                            help='OOV reference (default: the checkpoint lexicon with --model)')
        parser.add_argument('--parses', default=None, help='CoNLL parses of the gold text, for --model')
        parser.add_argument('--ext-emb', dest='ext_emb', default=None, help='external embeddings, for --model')
        parser.add_argument('--unconstrained', action='store_true', help='allow illegal BMES transitions')
        parser.add_argument('--record', default=None, help='append the JSON record to this file')

    def run(self, **options):
        if bool(options['pred']) == bool(options['model']):
            raise UsageError('give exactly one of --pred and --model')
        lexicon = LexiconService.read(options['lexicon']) if options['lexicon'] else None
        if options['pred']:
            if lexicon is None:
                logger.warning('no --lexicon given; OOV recall is not measured')
            metrics = score_files(options['gold'], options['pred'], lexicon)
        else:
            loaded = LoadedSegmenter.from_checkpoint(options['model'])
            gold = load_segmented_corpus(options['gold'], split='test')
            parses = load_parses(options['parses'], full_sentences(gold)) if options['parses'] else None
            external, _ = load_external(options['ext_emb'], gold)
            instances = loaded.instances(gold, parses, external)
            predicted = loaded.predict(instances, not options['unconstrained'], settings.TRAINER_DECODE_BATCH_SIZE)
            metrics = score_corpus(gold, predicted, lexicon if lexicon is not None else loaded.checkpoint.lexicon)

        values = metrics.as_dict()
        row = '\t'.join(f'{values[c]:.4f}' if isinstance(values[c], float) else str(values[c]).lower()
                        for c in COLUMNS)
        self.emit('\t'.join(COLUMNS) + '\n' + row + '\n')
        record = EvaluationRecordSerializer(dict(values, gold_path=options['gold'], predicted_path=options['pred'],
                                                 model_path=options['model'])).data
        line = json.dumps(record, ensure_ascii=False, sort_keys=True)
        if options['record']:
            with open(options['record'], 'a', encoding='utf-8') as handle:
                handle.write(line + '\n')
        else:
            self.emit(line + '\n')
