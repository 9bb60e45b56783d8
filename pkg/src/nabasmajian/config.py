"""Plain-text representation files and the built-in presets.

::

    # one-holed torus over Q_3
    field qp 3
    dim 2
    surface 1 1
    gen a 3 0 0 1
    gen b 1 -4 2 -5
    cutoff 12
    window 3

Optional lines: ``boundary <j> <word>`` replaces a boundary word and
``invert <j>`` reverses its orientation.  Matrix entries are listed row by
row; over ``laurent p`` they are rational functions in T such as
``(1+2T)/(T^3)`` written without spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BasmajianError, ConfigError
from .identity import DEFAULT_CUTOFF, DEFAULT_WINDOW, Representation
from .proj_linear import ProjMatrix, veronese
from .surface_group import SurfaceType, format_word, parse_word
from .valued_field import FieldModel


@dataclass
class Config:
    kind: str
    p: int
    d: int
    genus: int
    boundaries: int
    gens: dict
    boundary: dict = field(default_factory=dict)
    inverted: tuple = ()
    cutoff: int = DEFAULT_CUTOFF
    window: int = DEFAULT_WINDOW

    @property
    def model(self):
        return _model(self.kind, self.p)

    def representation(self, check=True):
        model = self.model
        images = {}
        for name, entries in self.gens.items():
            d = self.d
            images[name] = ProjMatrix(model, [entries[i * d:(i + 1) * d] for i in range(d)])
        return Representation(model, SurfaceType(self.genus, self.boundaries), images,
                              boundary=self.boundary, inverted=self.inverted,
                              cutoff=self.cutoff, window=self.window, check=check)

    def to_text(self):
        model = self.model
        lines = [f"field {self.kind} {self.p}", f"dim {self.d}",
                 f"surface {self.genus} {self.boundaries}"]
        for name, entries in self.gens.items():
            lines.append(f"gen {name} " + " ".join(model.format(x) for x in entries))
        for j, w in sorted(self.boundary.items()):
            lines.append(f"boundary {j} {format_word(w)}")
        for j in self.inverted:
            lines.append(f"invert {j}")
        lines += [f"cutoff {self.cutoff}", f"window {self.window}"]
        return "\n".join(lines) + "\n"


def _model(kind, p):
    return FieldModel.qp(p) if kind == "qp" else FieldModel.laurent(p)


def _int(tok, what, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ConfigError(f"{what} must be an integer, got {tok!r}", lineno) from None


def parse_config(text):
    seen = {}
    gens = {}
    boundary = {}
    inverted = []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *args = line.split()
        if key == "field":
            if len(args) != 2 or args[0] not in ("qp", "laurent"):
                raise ConfigError("expected 'field qp <p>' or 'field laurent <p>'", lineno)
            seen["field"] = (args[0], _int(args[1], "p", lineno))
            try:
                _model(*seen["field"])
            except (ValueError, BasmajianError) as exc:
                raise ConfigError(str(exc), lineno) from None
        elif key == "dim":
            if len(args) != 1:
                raise ConfigError("expected 'dim <d>'", lineno)
            seen["dim"] = _int(args[0], "dim", lineno)
            if seen["dim"] < 2:
                raise ConfigError("dim must be at least 2", lineno)
        elif key == "surface":
            if len(args) != 2:
                raise ConfigError("expected 'surface <g> <m>'", lineno)
            seen["surface"] = (_int(args[0], "genus", lineno), _int(args[1], "boundaries", lineno))
        elif key == "gen":
            if len(args) < 2:
                raise ConfigError("expected 'gen <name> <entries>'", lineno)
            name = args[0]
            if len(name) != 1 or not name.islower() or name in gens:
                raise ConfigError(f"bad or repeated generator name {name!r}", lineno)
            gens[name] = None
            pending.append((lineno, name, args[1:]))
        elif key == "boundary":
            if len(args) != 2:
                raise ConfigError("expected 'boundary <j> <word>'", lineno)
            pending.append((lineno, _int(args[0], "boundary index", lineno), args[1]))
        elif key == "invert":
            if len(args) != 1:
                raise ConfigError("expected 'invert <j>'", lineno)
            inverted.append(_int(args[0], "boundary index", lineno))
        elif key in ("cutoff", "window"):
            if len(args) != 1:
                raise ConfigError(f"expected '{key} <n>'", lineno)
            seen[key] = _int(args[0], key, lineno)
            if seen[key] < 0:
                raise ConfigError(f"{key} must be nonnegative", lineno)
        else:
            raise ConfigError(f"unknown directive {key!r}", lineno)
    for need in ("field", "dim", "surface"):
        if need not in seen:
            raise ConfigError(f"missing '{need}' line")
    kind, p = seen["field"]
    d = seen["dim"]
    genus, m = seen["surface"]
    try:
        surface = SurfaceType(genus, m)
    except BasmajianError as exc:
        raise ConfigError(str(exc)) from None
    model = _model(kind, p)
    for lineno, a, b in pending:
        if isinstance(a, str):
            if len(b) != d * d:
                raise ConfigError(f"generator {a} needs {d * d} entries, got {len(b)}", lineno)
            try:
                gens[a] = tuple(model.parse_raw(tok) for tok in b)
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"bad entry for generator {a}: {exc}", lineno) from None
        else:
            if not 1 <= a <= m:
                raise ConfigError(f"no boundary {a} on a surface with {m} boundaries", lineno)
            try:
                boundary[a] = parse_word(b, surface.rank)
            except BasmajianError as exc:
                raise ConfigError(str(exc), lineno) from None
    expected = [chr(ord("a") + i) for i in range(surface.rank)]
    if list(gens) != expected:
        raise ConfigError(f"expected gen lines for {' '.join(expected)} in that order, "
                          f"got {' '.join(gens) or 'none'}")
    for j in inverted:
        if not 1 <= j <= m:
            raise ConfigError(f"no boundary {j} to invert")
    return Config(kind=kind, p=p, d=d, genus=genus, boundaries=m, gens=gens,
                  boundary=boundary, inverted=tuple(inverted),
                  cutoff=seen.get("cutoff", DEFAULT_CUTOFF),
                  window=seen.get("window", DEFAULT_WINDOW))


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _from_matrices(kind, p, genus, m, mats):
    model = _model(kind, p)
    d = len(mats[0])
    gens = {chr(ord("a") + i): tuple(model.raw(x) for row in mat for x in row)
            for i, mat in enumerate(mats)}
    return Config(kind=kind, p=p, d=d, genus=genus, boundaries=m, gens=gens)


def _ex51():
    # b is z -> (z - 4) / (2z - 5): it fixes 1 and 2
    return _from_matrices("qp", 3, 1, 1, [[[3, 0], [0, 1]], [[1, -4], [2, -5]]])


def _ex52():
    # b fixes 1 and 3
    return _from_matrices("qp", 2, 1, 1, [[[2, 0], [0, 1]], [[5, -3], [1, 1]]])


def _veronese3():
    base = _ex51()
    model = base.model
    mats = []
    for entries in base.gens.values():
        lifted = veronese(ProjMatrix(model, [entries[:2], entries[2:]]), 3)
        mats.append([[x.value for x in row] for row in lifted.rows])
    return _from_matrices("qp", 3, 1, 1, mats)


PRESETS = {"ex51": _ex51, "ex52": _ex52, "veronese3": _veronese3}


def preset(name):
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
