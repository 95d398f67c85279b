import logging

from django.conf import settings

from corpus.services.corpus_service import LexiconService, build_lexicon, load_segmented_corpus
from graph.services.builder import GraphBuilder
from graphseg.commands import SegmenterCommand
from network.batching import collate
from network.encoder import CharVocab
from network.models import NodeVocab
from ngram.models import NgramVocab
from ngram.services.accessor_variety import VocabService
from trainer.options import TRAINING_SETTING_DEFAULTS, add_training_arguments, training_config
from trainer.serializers import GradCheckRecordSerializer
from trainer.services.checkpoint import CheckpointService, build_model
from trainer.services.gradcheck import ERROR_FLOOR, grad_check
from trainer.services.segmentation import prepare_instances

logger = logging.getLogger(__name__)


class Command(SegmenterCommand):
    help = 'Compare analytic gradients with central finite differences on a few sentences'
    model_flags = True
    setting_defaults = dict(
        TRAINING_SETTING_DEFAULTS,
        epsilon='TRAINER_GRAD_CHECK_EPSILON',
        samples='TRAINER_GRAD_CHECK_SAMPLES',
        sentences='TRAINER_GRAD_CHECK_SENTENCES',
    )

    def add_command_arguments(self, parser):
        parser.add_argument('corpus', help='segmented corpus supplying the sentences')
        parser.add_argument('--model', default=None, help='checkpoint to check (default: a fresh model)')
        parser.add_argument('--lexicon', default=None)
        parser.add_argument('--vocab', default=None)
        parser.add_argument('--epsilon', type=float, default=None)
        parser.add_argument('--samples', type=int, default=None, help='coordinates checked per tensor')
        parser.add_argument('--sentences', type=int, default=None)
        add_training_arguments(parser)

    def run(self, **options):
        corpus = load_segmented_corpus(options['corpus'])
        items = corpus.sentences[:options['sentences']]
        if options['model']:
            checkpoint = CheckpointService.load(options['model'])
            model, char_vocab, node_vocab = checkpoint.model, checkpoint.char_vocab, checkpoint.node_vocab
            lexicon, vocab, config = checkpoint.lexicon, checkpoint.vocab, checkpoint.config
        else:
            config = training_config(self, options)
            lexicon = LexiconService.read(options['lexicon']) if options['lexicon'] else build_lexicon(corpus)
            vocab = VocabService.read(options['vocab']) if options['vocab'] else NgramVocab({})
            char_vocab = CharVocab.build(corpus)
            node_vocab = NodeVocab.build(lexicon, vocab)
            model = build_model(config, char_vocab, node_vocab, init_range=settings.NETWORK_INIT_RANGE)
        builder = GraphBuilder(lexicon, vocab, config.graph) if config.use_hgn else None
        instances = prepare_instances(items, builder)
        batch = collate(instances, char_vocab, node_vocab if model.use_hgn else None)
        self.log_config()

        report = grad_check(model, batch, epsilon=options['epsilon'], samples=options['samples'],
                            seed=options['seed'])
        rows = GradCheckRecordSerializer(report.rows(), many=True).data
        lines = [f'{row["tensor"]}\t{row["coordinates"]}\t{row["relative_error"]:.3e}\n' for row in rows]
        lines.append(f'worst\t{sum(report.coordinates.values())}\t{report.worst:.3e}\n')
        self.emit(''.join(lines))
        if report.worst > ERROR_FLOOR:
            logger.warning('worst relative error %.3e exceeds %.0e', report.worst, ERROR_FLOOR)
