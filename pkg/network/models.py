import torch
from torch import nn
from torch.nn.utils.rnn import pad_sequence

from exceptions import EncoderError
from network.crf import LinearChainCRF, batch_neg_log_likelihood
from network.encoder import CharEncoder
from network.hgnn import HeteroGraphNetwork

UNK_ENTRY = '⟨UNK⟩'


class NodeVocab:
    """Rows of the embedding table shared by WORD and NGRAM nodes.

    Row 0 stands for strings unseen at training time, then one row per
    lexicon word, then every n-gram that is not also a lexicon word.
    """

    def __init__(self, entries):
        self.entries = [UNK_ENTRY] + [e for e in entries if e != UNK_ENTRY]
        self.index = {entry: i for i, entry in enumerate(self.entries)}

    @classmethod
    def build(cls, lexicon=None, vocab=None):
        entries = sorted(lexicon) if lexicon is not None else []
        if vocab is not None:
            known = set(entries)
            entries.extend(key for key in vocab.ordered_keys() if key not in known)
        return cls(entries)

    def __len__(self):
        return len(self.entries)

    def lookup(self, surface):
        return self.index.get(surface, 0)


class Segmenter(nn.Module):
    """Character encoder, optional gated graph network, and CRF decoder."""

    def __init__(self, char_vocab_size, node_vocab_size, relations, char_dim=64, hidden_dim=64,
                 layers=2, ext_dim=None, use_hgn=True, activation='relu', init_range=0.1):
        super().__init__()
        self.use_hgn = use_hgn
        self.char_dim = char_dim
        self.hidden_dim = hidden_dim
        self.ext_dim = ext_dim or None
        self.encoder = CharEncoder(char_vocab_size, char_dim, self.ext_dim, init_range)
        self.input_projection = None
        self.node_embedding = None
        self.hgnn = None
        if use_hgn:
            if not relations:
                raise EncoderError('the graph network needs at least one relation')
            if char_dim != hidden_dim:
                self.input_projection = nn.Linear(char_dim, hidden_dim, bias=False, dtype=torch.float64)
                nn.init.uniform_(self.input_projection.weight, -init_range, init_range)
            self.node_embedding = nn.Embedding(node_vocab_size, hidden_dim, dtype=torch.float64)
            nn.init.uniform_(self.node_embedding.weight, -init_range, init_range)
            self.hgnn = HeteroGraphNetwork(hidden_dim, relations, layers, activation)
            self.crf = LinearChainCRF(hidden_dim + char_dim, init_range)
        else:
            self.crf = LinearChainCRF(char_dim, init_range)

    def set_activation(self, activation):
        if self.hgnn is not None:
            self.hgnn.activation = activation

    def initial_states(self, batch, e):
        x_char = self.input_projection(e) if self.input_projection is not None else e
        h0 = x_char.new_zeros(batch.num_nodes, self.hidden_dim)
        h0 = h0.index_copy(0, batch.char_node_index, x_char)
        if batch.node_ids.numel():
            h0 = h0.index_copy(0, batch.match_node_index, self.node_embedding(batch.node_ids))
        return h0

    def forward(self, batch):
        """Padded emission scores [B, T, 4]."""
        e = self.encoder(batch.char_ids, batch.external)
        if self.use_hgn:
            if batch.char_node_index is None:
                raise EncoderError('graph network enabled but the batch carries no graphs')
            h = self.hgnn(self.initial_states(batch, e), batch.adjacency, batch.char_node_index)
            scores = self.crf.emissions(h, e)
        else:
            scores = self.crf.emissions(None, e)
        return pad_sequence(list(torch.split(scores, batch.lengths)), batch_first=True)

    def loss(self, batch, reduction='mean'):
        if batch.tags is None:
            raise EncoderError('batch has no gold labels')
        nll = batch_neg_log_likelihood(self(batch), batch.mask, self.crf.transitions, batch.tags)
        return nll.sum() if reduction == 'sum' else nll.mean()

    @torch.no_grad()
    def decode(self, batch, constrain_legal=True):
        scores = self(batch)
        return [self.crf.decode(scores[row, :length], constrain_legal)
                for row, length in enumerate(batch.lengths)]
