from corpus.services.corpus_service import (LexiconService, full_sentences, load_raw_sentences,
                                            load_segmented_corpus)
from graph.services.builder import GraphBuilder
from graph.services.dump import dump_graph, graph_stats
from graphseg.commands import SegmenterCommand
from ngram.services.accessor_variety import VocabService
from parses.services.conll_reader import load_parses


class Command(SegmenterCommand):
    help = 'Print the heterogeneous graph of each input sentence'
    model_flags = True

    def add_command_arguments(self, parser):
        parser.add_argument('input', help='sentences, segmented unless --raw is given')
        parser.add_argument('--raw', action='store_true')
        parser.add_argument('--lexicon', default=None, help='word<TAB>count lexicon file')
        parser.add_argument('--vocab', default=None, help='n-gram vocabulary file')
        parser.add_argument('--parses', default=None, help='CoNLL dependency parses, one per sentence')
        parser.add_argument('--stats', action='store_true', help='print node and edge totals only')

    def run(self, **options):
        config = self.graph_config(options)
        lexicon = LexiconService.read(options['lexicon']) if options['lexicon'] else None
        vocab = VocabService.read(options['vocab']) if options['vocab'] else None
        builder = GraphBuilder(lexicon, vocab, config)
        self.log_config()

        if options['raw']:
            sentences = load_raw_sentences(options['input'])
            parses = None
            if options['parses']:
                parses = load_parses(options['parses'], [sentence.chars for sentence in sentences])
            labelled = []
            for ordinal, sentence in enumerate(sentences):
                parse = builder.project(parses, ordinal, sentence.chars)
                labelled.append((ordinal, sentence, builder.build(sentence, parse)))
        else:
            corpus = load_segmented_corpus(options['input'])
            parses = load_parses(options['parses'], full_sentences(corpus)) if options['parses'] else None
            labelled = [(item.ordinal, item.sentence, builder.build_item(item, parses, item.sentence_length))
                        for item in corpus]
        graphs = []
        for ordinal, sentence, graph in labelled:
            graphs.append(graph)
            if not options['stats']:
                self.emit(f'# sentence {ordinal}\t{sentence.text}\n{dump_graph(graph)}\n')
        if options['stats']:
            stats = graph_stats(graphs, config)
            self.emit(''.join(f'{key}\t{stats[key]}\n' for key in sorted(stats)))
