"""Relation-typed graph convolution with edge-wise gating.

Each relation τ owns a d x d transformation and a scalar gate computed from
the source node's state. A layer sums the gated, normalized messages of every
enabled relation before the activation:

    H' = σ( Σ_τ Ã_τ · diag(g_τ) · H · W_τ ),   g_τ = sigmoid(H · w_τ + b_τ)
"""
import torch
from torch import nn

from exceptions import EncoderError

ACTIVATIONS = ('relu', 'tanh', 'identity')


def gate(h, weight, bias):
    """One scalar in (0, 1) per node row."""
    if h.shape[-1] != weight.shape[0]:
        raise EncoderError(f'gate weight of size {weight.shape[0]} does not fit rows of size {h.shape[-1]}')
    return torch.sigmoid(h @ weight + bias)


def activate(x, activation):
    if activation == 'relu':
        return torch.relu(x)
    if activation == 'tanh':
        return torch.tanh(x)
    return x


def graph_adjacency(graph):
    """{relation value: (indices [2, nnz] as (dst, src), values)} of a graph's Ã matrices."""
    adjacency = {}
    for relation, matrix in graph.normalized.items():
        matrix = matrix.coalesce()
        adjacency[relation.value] = (matrix.indices(), matrix.values())
    return adjacency


class HeteroGraphConv(nn.Module):

    def __init__(self, dim, relations, activation='relu'):
        super().__init__()
        if activation not in ACTIVATIONS:
            raise EncoderError(f'activation must be one of {ACTIVATIONS}')
        self.dim = dim
        self.relations = [getattr(r, 'value', r) for r in relations]
        self.activation = activation
        self.weights = nn.ParameterDict({
            r: nn.Parameter(torch.empty(dim, dim, dtype=torch.float64)) for r in self.relations})
        self.gate_weights = nn.ParameterDict({
            r: nn.Parameter(torch.empty(dim, dtype=torch.float64)) for r in self.relations})
        self.gate_biases = nn.ParameterDict({
            r: nn.Parameter(torch.zeros((), dtype=torch.float64)) for r in self.relations})
        self.reset_parameters()

    def reset_parameters(self):
        for r in self.relations:
            nn.init.xavier_uniform_(self.weights[r])
            nn.init.uniform_(self.gate_weights[r], -0.1, 0.1)
            nn.init.zeros_(self.gate_biases[r])

    def pre_activation(self, h, adjacency):
        if h.dim() != 2 or h.shape[1] != self.dim:
            raise EncoderError(f'node states {tuple(h.shape)} do not match layer width {self.dim}')
        output = h.new_zeros(h.shape[0], self.dim)
        for r in self.relations:
            # relations absent from the graph are disabled
            if r not in adjacency:
                continue
            indices, values = adjacency[r]
            if values.numel() == 0:
                continue
            dst, src = indices[0], indices[1]
            g = gate(h, self.gate_weights[r], self.gate_biases[r])
            messages = (g.unsqueeze(1) * h) @ self.weights[r]
            output = output.index_add(0, dst, values.unsqueeze(1) * messages[src])
        return output

    def forward(self, h, adjacency):
        return activate(self.pre_activation(h, adjacency), self.activation)


def layer_forward(h, graph, network, layer):
    """H^(l+1) for one graph given the network holding the layer parameters."""
    return network.layers[layer](h, graph_adjacency(graph))


class HeteroGraphNetwork(nn.Module):
    """Stack of gated relational layers; returns CHAR-node rows."""

    def __init__(self, dim, relations, layers=2, activation='relu'):
        super().__init__()
        if layers < 1:
            raise EncoderError('the graph network needs at least one layer')
        self.layers = nn.ModuleList(HeteroGraphConv(dim, relations, activation) for _ in range(layers))

    @property
    def activation(self):
        return self.layers[0].activation

    @activation.setter
    def activation(self, value):
        if value not in ACTIVATIONS:
            raise EncoderError(f'activation must be one of {ACTIVATIONS}')
        for layer in self.layers:
            layer.activation = value

    def forward(self, h, adjacency, char_index):
        for layer in self.layers:
            h = layer(h, adjacency)
        return h[char_index]
