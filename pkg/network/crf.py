"""Linear-chain CRF over BMES labels.

Position 0 carries its emission only; there are no start or stop transition
vectors. Legality of the first and last label is enforced at decode time.
"""
import torch
from torch import nn

from corpus.models import LEGAL_FIRST, LEGAL_LAST, LEGAL_NEXT, Label, LabelSeq
from exceptions import EncoderError

NUM_LABELS = len(Label)
NEG_INF = float('-inf')


def emissions(h, e, weight, bias):
    """s(X, i) = W_sᵀ (h_i ⊕ e_i) + b_s; h may be None for the encoder-only model."""
    if h is not None:
        if h.shape[0] != e.shape[0]:
            raise EncoderError(f'{h.shape[0]} graph rows do not match {e.shape[0]} encoder rows')
        features = torch.cat([h, e], dim=-1)
    else:
        features = e
    return features @ weight + bias


def legal_transitions():
    mask = torch.zeros(NUM_LABELS, NUM_LABELS, dtype=torch.bool)
    for prev, allowed in LEGAL_NEXT.items():
        for label in allowed:
            mask[prev, label] = True
    return mask


def _label_mask(labels):
    mask = torch.zeros(NUM_LABELS, dtype=torch.bool)
    for label in labels:
        mask[label] = True
    return mask


def log_partition(scores, transitions):
    if scores.shape[0] == 0:
        raise EncoderError('cannot score an empty sequence')
    alpha = scores[0]
    for i in range(1, scores.shape[0]):
        alpha = torch.logsumexp(alpha.unsqueeze(1) + transitions, dim=0) + scores[i]
    return torch.logsumexp(alpha, dim=0)


def sequence_score(scores, transitions, labels):
    labels = torch.as_tensor([int(y) for y in labels], dtype=torch.long)
    if labels.shape[0] != scores.shape[0]:
        raise EncoderError(f'{labels.shape[0]} labels for {scores.shape[0]} positions')
    total = scores[torch.arange(labels.shape[0]), labels].sum()
    if labels.shape[0] > 1:
        total = total + transitions[labels[:-1], labels[1:]].sum()
    return total


def neg_log_likelihood(scores, transitions, gold):
    return log_partition(scores, transitions) - sequence_score(scores, transitions, gold)


def viterbi(scores, transitions, constrain_legal=True):
    """Best label sequence and its score.

    Among equal-scoring predecessors the smallest label index wins, and so
    does the smallest final label.
    """
    length = scores.shape[0]
    if length == 0:
        raise EncoderError('cannot decode an empty sequence')
    emit = scores.detach().tolist()
    trans = transitions.detach().tolist()
    if constrain_legal:
        legal = legal_transitions().tolist()
        trans = [[t if legal[p][y] else NEG_INF for y, t in enumerate(row)] for p, row in enumerate(trans)]
        emit[0] = [s if Label(y) in LEGAL_FIRST else NEG_INF for y, s in enumerate(emit[0])]
    labels = range(NUM_LABELS)

    delta = list(emit[0])
    backpointers = []
    for i in range(1, length):
        pointers, current = [], []
        for y in labels:
            best_prev, best = 0, delta[0] + trans[0][y]
            for prev in labels[1:]:
                candidate = delta[prev] + trans[prev][y]
                if candidate > best:
                    best_prev, best = prev, candidate
            pointers.append(best_prev)
            current.append(best + emit[i][y])
        backpointers.append(pointers)
        delta = current

    if constrain_legal:
        delta = [d if Label(y) in LEGAL_LAST else NEG_INF for y, d in enumerate(delta)]
    last = max(labels, key=lambda y: (delta[y], -y))
    path = [last]
    for pointers in reversed(backpointers):
        path.append(pointers[path[-1]])
    path.reverse()
    return LabelSeq(tuple(Label(y) for y in path)), delta[last]


def batch_log_partition(scores, mask, transitions):
    """Log-partition of every padded sequence; scores [B, T, L], mask [B, T]."""
    alpha = scores[:, 0]
    for i in range(1, scores.shape[1]):
        step = torch.logsumexp(alpha.unsqueeze(2) + transitions.unsqueeze(0), dim=1) + scores[:, i]
        alpha = torch.where(mask[:, i].unsqueeze(1), step, alpha)
    return torch.logsumexp(alpha, dim=1)


def batch_sequence_score(scores, mask, transitions, tags):
    weights = mask.to(scores.dtype)
    emitted = scores.gather(2, tags.unsqueeze(2)).squeeze(2)
    total = (emitted * weights).sum(dim=1)
    if scores.shape[1] > 1:
        moves = transitions[tags[:, :-1], tags[:, 1:]]
        total = total + (moves * weights[:, 1:]).sum(dim=1)
    return total


def batch_neg_log_likelihood(scores, mask, transitions, tags):
    return batch_log_partition(scores, mask, transitions) - batch_sequence_score(scores, mask, transitions, tags)


class LinearChainCRF(nn.Module):

    def __init__(self, input_dim, init_range=0.1):
        super().__init__()
        self.input_dim = input_dim
        self.emission_weight = nn.Parameter(torch.empty(input_dim, NUM_LABELS, dtype=torch.float64))
        self.emission_bias = nn.Parameter(torch.zeros(NUM_LABELS, dtype=torch.float64))
        self.transitions = nn.Parameter(torch.empty(NUM_LABELS, NUM_LABELS, dtype=torch.float64))
        nn.init.uniform_(self.emission_weight, -init_range, init_range)
        nn.init.uniform_(self.transitions, -init_range, init_range)

    def emissions(self, h, e):
        return emissions(h, e, self.emission_weight, self.emission_bias)

    def decode(self, scores, constrain_legal=True):
        return viterbi(scores, self.transitions, constrain_legal)[0]
