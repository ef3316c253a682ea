"""Exception types raised across gridbtw.

Input problems derive from :class:`InputError` (CLI exit status 1),
failures during computation derive from :class:`ComputeError` (exit status 2).
"""


class GridBtwError(Exception):
    pass


class InputError(GridBtwError, ValueError):
    pass


class ComputeError(GridBtwError, RuntimeError):
    pass


class IndexOutOfRange(InputError, IndexError):
    def __init__(self, index, bound):
        super().__init__(f"node index {index} out of range for {bound} nodes")
        self.index = index
        self.bound = bound


class SelfLoop(InputError):
    def __init__(self, u):
        super().__init__(f"self-loop at node {u}")
        self.u = u


class DuplicateEdge(InputError):
    def __init__(self, u, v):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.u = u
        self.v = v


class NoSuchEdge(InputError, KeyError):
    def __init__(self, u, v):
        super().__init__(f"no edge between {u} and {v}")
        self.u = u
        self.v = v

    def __str__(self):
        return self.args[0]


class ParseError(InputError):
    def __init__(self, line, content, reason="malformed record"):
        super().__init__(f"line {line}: {reason}: {content!r}")
        self.line = line
        self.content = content


class UnknownBus(InputError):
    def __init__(self, branch_index, bus_id):
        super().__init__(f"branch {branch_index} references unknown bus {bus_id!r}")
        self.branch_index = branch_index
        self.bus_id = bus_id


class EmptyGraph(InputError):
    pass


class NormalizeTooSmall(InputError):
    def __init__(self, n):
        super().__init__(f"normalization needs at least 3 nodes, got {n}")
        self.n = n


class AlreadyNormalized(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class StateMismatch(InputError):
    pass


class TooLarge(ComputeError):
    pass


class Unreachable(ComputeError):
    def __init__(self, s, t):
        super().__init__(f"node {t} is unreachable from {s}")
        self.s = s
        self.t = t


class PathCountOverflow(ComputeError):
    def __init__(self, source):
        super().__init__(f"shortest-path count overflowed 64 bits for source {source}")
        self.source = source


class WorkerError(ComputeError):
    def __init__(self, source, cause):
        super().__init__(f"worker failed on source {source}: {cause}")
        self.source = source
        self.cause = cause


class ValidationFailed(ComputeError):
    def __init__(self, cell, detail):
        super().__init__(f"benchmark cell {cell} diverged from reference: {detail}")
        self.cell = cell
