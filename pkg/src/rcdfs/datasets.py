"""Dataset loading, preparation, and synthetic benchmark generators.

Files come in as a RawDataset of typed columns (numeric or nominal, with
None for missing cells).  ``prepare`` turns that into dense integer codes:
nominal categories map to codes in category order, numeric features go
through MDL discretization (or dense value coding when discretization is
off), and missing cells are imputed with the modal code afterwards.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .discretize import DiscretizationModel, apply_cuts, fit_cuts

__all__ = [
    "Column",
    "RawDataset",
    "Prepared",
    "load_csv",
    "load_arff",
    "save_csv",
    "save_arff",
    "reassign_class",
    "prepare",
    "synth_xor",
    "synth_duplicate",
    "synth_planted",
]

_MISSING_TOKENS = {"", "?"}


@dataclass
class Column:
    name: str
    kind: str  # "numeric" or "nominal"
    values: list  # floats or category strings; None marks a missing cell
    categories: list[str] | None = None  # nominal only; order defines the coding

    def __post_init__(self):
        if self.kind not in ("numeric", "nominal"):
            raise ValueError(f"column {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == "nominal" and self.categories is None:
            seen = []
            for v in self.values:
                if v is not None and v not in seen:
                    seen.append(v)
            self.categories = seen


@dataclass
class RawDataset:
    relation: str
    columns: list[Column]
    class_index: int

    def __post_init__(self):
        if not self.columns:
            raise ValueError("dataset has no columns")
        lengths = {len(c.values) for c in self.columns}
        if len(lengths) != 1:
            raise ValueError("columns have unequal lengths")
        if not 0 <= self.class_index < len(self.columns):
            raise ValueError("class_index out of range")
        cls = self.columns[self.class_index]
        if cls.kind != "nominal":
            raise ValueError("class column must be nominal")
        if any(v is None for v in cls.values):
            raise ValueError("class column contains missing values")

    @property
    def n_rows(self) -> int:
        return len(self.columns[0].values)

    @property
    def feature_columns(self) -> list[Column]:
        return [c for i, c in enumerate(self.columns) if i != self.class_index]


def _open(path_or_file, mode="r"):
    if hasattr(path_or_file, "read") or hasattr(path_or_file, "write"):
        return path_or_file, False
    return open(path_or_file, mode, encoding="utf-8", newline=""), True


def _resolve_class_index(names: list[str], designator) -> int:
    """Resolve a class-column designator: a column name, or else an index."""
    if isinstance(designator, int):
        index = designator
    elif designator in names:
        return names.index(designator)
    else:
        try:
            index = int(designator)
        except ValueError:
            raise ValueError(f"class column {designator!r} not found") from None
    if not 0 <= index < len(names):
        raise ValueError(f"class column index {index} out of range for {len(names)} columns")
    return index


def reassign_class(dataset: RawDataset, designator) -> RawDataset:
    """Re-point the class column by name or index.

    A numeric target column is coerced to nominal (categories in
    first-appearance order), mirroring how loaders treat class columns.
    """
    names = [c.name for c in dataset.columns]
    index = _resolve_class_index(names, designator)
    columns = list(dataset.columns)
    target = columns[index]
    if target.kind == "numeric":
        if any(v is None for v in target.values):
            raise ValueError(f"class column {target.name!r} contains missing values")
        as_str = [str(int(v)) if float(v).is_integer() else repr(v) for v in target.values]
        columns[index] = Column(target.name, "nominal", as_str)
    return RawDataset(relation=dataset.relation, columns=columns, class_index=index)


def load_csv(path_or_file, class_column: str | int | None = None) -> RawDataset:
    """Load a CSV with a header row.

    Cells that are empty or "?" are missing.  A column is numeric when every
    non-missing cell parses as a number, nominal otherwise (categories in
    first-appearance order).  The class column (picked by name or index, or
    the last one) is always treated as nominal and must have no missing
    cells.
    """
    fh, close = _open(path_or_file)
    try:
        rows = [r for r in csv.reader(fh) if r]
    finally:
        if close:
            fh.close()
    if not rows:
        raise ValueError("empty CSV file")
    header = [h.strip() for h in rows[0]]
    if class_column is None:
        class_index = len(header) - 1
    else:
        class_index = _resolve_class_index(header, class_column)

    cells = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValueError(f"row {r} has {len(row)} cells, expected {len(header)}")
        cells.append([c.strip() for c in row])

    columns = []
    for j, name in enumerate(header):
        raw = [row[j] for row in cells]
        if j == class_index:
            if any(tok in _MISSING_TOKENS for tok in raw):
                raise ValueError(f"class column {name!r} contains missing values")
            columns.append(Column(name, "nominal", list(raw)))
            continue
        tokens = [None if tok in _MISSING_TOKENS else tok for tok in raw]
        parsed = []
        numeric = True
        for tok in tokens:
            if tok is None:
                parsed.append(None)
                continue
            try:
                parsed.append(float(tok))
            except ValueError:
                numeric = False
                break
        if numeric:
            columns.append(Column(name, "numeric", parsed))
        else:
            columns.append(Column(name, "nominal", tokens))
    return RawDataset(relation="csv", columns=columns, class_index=class_index)


def _split_arff_values(line: str) -> list[tuple[str, bool]]:
    """Split a comma-separated ARFF payload into (token, was_quoted) pairs."""
    out = []
    buf = []
    quoted = False
    quote = None
    i = 0
    while i < len(line):
        ch = line[i]
        if quote:
            if ch == quote:
                quote = None
            else:
                buf.append(ch)
        elif ch in "'\"":
            quote = ch
            quoted = True
        elif ch == ",":
            out.append(("".join(buf).strip() if not quoted else "".join(buf), quoted))
            buf, quoted = [], False
        else:
            buf.append(ch)
        i += 1
    if quote:
        raise ValueError(f"unterminated quote in ARFF line: {line!r}")
    out.append(("".join(buf).strip() if not quoted else "".join(buf), quoted))
    return out


def load_arff(path_or_file) -> RawDataset:
    """Load a dense ARFF file; the last attribute is the class.

    Supports numeric/real/integer and nominal attributes.  Sparse data rows
    (starting with "{") are rejected.  A numeric class attribute is coerced
    to nominal with categories in first-appearance order.
    """
    fh, close = _open(path_or_file)
    try:
        lines = fh.read().splitlines()
    finally:
        if close:
            fh.close()

    relation = "arff"
    attrs = []  # (name, kind, categories)
    data_rows = []
    in_data = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        low = line.lower()
        if in_data:
            if line.startswith("{"):
                raise ValueError(f"line {lineno}: sparse ARFF data is not supported")
            data_rows.append(_split_arff_values(line))
        elif low.startswith("@relation"):
            rest = line[len("@relation"):].strip()
            if rest:
                relation = rest.strip("'\"")
        elif low.startswith("@attribute"):
            rest = line[len("@attribute"):].strip()
            if rest.startswith(("'", '"')):
                q = rest[0]
                end = rest.index(q, 1)
                name, spec = rest[1:end], rest[end + 1:].strip()
            else:
                parts = rest.split(None, 1)
                if len(parts) != 2:
                    raise ValueError(f"line {lineno}: malformed @attribute")
                name, spec = parts
            spec = spec.strip()
            if spec.startswith("{"):
                if not spec.endswith("}"):
                    raise ValueError(f"line {lineno}: malformed nominal specification")
                cats = [tok for tok, _ in _split_arff_values(spec[1:-1])]
                attrs.append((name, "nominal", cats))
            elif spec.lower() in ("numeric", "real", "integer"):
                attrs.append((name, "numeric", None))
            else:
                raise ValueError(f"line {lineno}: unsupported attribute type {spec!r}")
        elif low.startswith("@data"):
            in_data = True
        else:
            raise ValueError(f"line {lineno}: unexpected content {line!r}")

    if not attrs:
        raise ValueError("ARFF file declares no attributes")
    if not in_data:
        raise ValueError("ARFF file has no @data section")

    n_attrs = len(attrs)
    parsed_cols: list[list] = [[] for _ in range(n_attrs)]
    for r, tokens in enumerate(data_rows, start=1):
        if len(tokens) != n_attrs:
            raise ValueError(f"data row {r} has {len(tokens)} values, expected {n_attrs}")
        for j, (tok, was_quoted) in enumerate(tokens):
            if tok == "?" and not was_quoted:
                parsed_cols[j].append(None)
            elif attrs[j][1] == "numeric":
                try:
                    parsed_cols[j].append(float(tok))
                except ValueError:
                    raise ValueError(
                        f"data row {r}: non-numeric value {tok!r} in numeric "
                        f"attribute {attrs[j][0]!r}"
                    ) from None
            else:
                if tok not in attrs[j][2]:
                    raise ValueError(
                        f"data row {r}: undeclared category {tok!r} in "
                        f"attribute {attrs[j][0]!r}"
                    )
                parsed_cols[j].append(tok)

    class_index = n_attrs - 1
    columns = []
    for j, (name, kind, cats) in enumerate(attrs):
        vals = parsed_cols[j]
        if j == class_index and kind == "numeric":
            if any(v is None for v in vals):
                raise ValueError(f"class column {name!r} contains missing values")
            as_str = [str(int(v)) if float(v).is_integer() else repr(v) for v in vals]
            columns.append(Column(name, "nominal", as_str))
        elif kind == "nominal":
            columns.append(Column(name, "nominal", vals, categories=list(cats)))
        else:
            columns.append(Column(name, "numeric", vals))
    return RawDataset(relation=relation, columns=columns, class_index=class_index)


def _format_cell(v) -> str:
    if v is None:
        return "?"
    if isinstance(v, float):
        return str(int(v)) if v.is_integer() else repr(v)
    return str(v)


def save_csv(dataset: RawDataset, path_or_file) -> None:
    fh, close = _open(path_or_file, "w")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([c.name for c in dataset.columns])
        for i in range(dataset.n_rows):
            writer.writerow([_format_cell(c.values[i]) for c in dataset.columns])
    finally:
        if close:
            fh.close()


def _quote_arff(tok: str) -> str:
    if tok == "" or any(ch in tok for ch in " ,{}%'\""):
        if "'" not in tok:
            return f"'{tok}'"
        if '"' not in tok:
            return f'"{tok}"'
        raise ValueError(f"cannot represent value with both quote characters: {tok!r}")
    return tok


def save_arff(dataset: RawDataset, path_or_file) -> None:
    fh, close = _open(path_or_file, "w")
    try:
        fh.write(f"@relation {_quote_arff(dataset.relation)}\n")
        for c in dataset.columns:
            if c.kind == "numeric":
                fh.write(f"@attribute {_quote_arff(c.name)} numeric\n")
            else:
                cats = ",".join(_quote_arff(cat) for cat in c.categories)
                fh.write(f"@attribute {_quote_arff(c.name)} {{{cats}}}\n")
        fh.write("@data\n")
        for i in range(dataset.n_rows):
            cells = [
                "?" if c.values[i] is None else _quote_arff(_format_cell(c.values[i]))
                for c in dataset.columns
            ]
            fh.write(",".join(cells) + "\n")
    finally:
        if close:
            fh.close()


@dataclass
class Prepared:
    """Integer-coded dataset ready for selection and classification."""

    X: np.ndarray
    y: np.ndarray
    arities: np.ndarray
    class_arity: int
    feature_names: list[str]
    class_name: str
    class_categories: list[str]
    feature_categories: list
    model: DiscretizationModel | None
    n_imputed: list[int]


def _impute_modal(codes: np.ndarray, missing: np.ndarray, arity: int) -> int:
    """Fill missing slots with the most frequent code; ties take the lowest."""
    counts = np.bincount(codes[~missing], minlength=arity)
    modal = int(np.argmax(counts))
    codes[missing] = modal
    return int(missing.sum())


def prepare(
    raw: RawDataset,
    model: DiscretizationModel | None = None,
    discretize: bool = True,
) -> Prepared:
    """Code a raw dataset as integers.

    Numeric features are discretized with MDL cuts fit against the class on
    the non-missing rows (or with the cuts from ``model`` when given).  With
    ``discretize=False`` numeric features must hold integral values and are
    dense-coded by sorted value.  Missing cells are imputed with the modal
    code after coding.  A feature with no observed value is an error.
    """
    n = raw.n_rows
    if n == 0:
        raise ValueError("dataset has no rows")
    cls = raw.columns[raw.class_index]
    class_categories = list(cls.categories)
    code_of = {cat: i for i, cat in enumerate(class_categories)}
    y = np.array([code_of[v] for v in cls.values], dtype=np.int64)

    features = raw.feature_columns
    if model is not None and len(model.cut_points) != len(features):
        raise ValueError(
            f"model covers {len(model.cut_points)} features, dataset has {len(features)}"
        )

    X = np.empty((n, len(features)), dtype=np.int64)
    arities = np.empty(len(features), dtype=np.int64)
    cut_points: list[list[float] | None] = []
    feature_categories = []
    n_imputed = []
    for j, col in enumerate(features):
        missing = np.array([v is None for v in col.values])
        if missing.all():
            raise ValueError(f"feature {col.name!r} has no observed values")
        codes = np.zeros(n, dtype=np.int64)
        if col.kind == "nominal":
            cmap = {cat: i for i, cat in enumerate(col.categories)}
            for i, v in enumerate(col.values):
                if v is not None:
                    codes[i] = cmap[v]
            arity = len(col.categories)
            cut_points.append(None)
            feature_categories.append(list(col.categories))
        else:
            vals = np.array([0.0 if v is None else v for v in col.values])
            if model is not None:
                cuts = model.cut_points[j]
                if cuts is None:
                    raise ValueError(f"model has no cuts for numeric feature {col.name!r}")
                cuts = np.asarray(cuts, dtype=float)
            elif discretize:
                cuts = fit_cuts(vals[~missing], y[~missing])
            else:
                observed = vals[~missing]
                if not np.all(observed == np.floor(observed)):
                    raise ValueError(
                        f"feature {col.name!r} has non-integral values; "
                        "discretization is required"
                    )
                uniq = np.unique(observed)
                codes[~missing] = np.searchsorted(uniq, observed)
                arity = len(uniq)
                cut_points.append(None)
                feature_categories.append(None)
                n_imputed.append(_impute_modal(codes, missing, arity))
                X[:, j] = codes
                arities[j] = arity
                continue
            codes[~missing] = apply_cuts(cuts, vals[~missing])
            arity = len(cuts) + 1
            cut_points.append([float(c) for c in cuts])
            feature_categories.append(None)
        n_imputed.append(_impute_modal(codes, missing, arity))
        X[:, j] = codes
        arities[j] = arity

    out_model = model
    if out_model is None and discretize:
        out_model = DiscretizationModel(
            cut_points=cut_points,
            feature_names=[c.name for c in features],
        )
    return Prepared(
        X=X,
        y=y,
        arities=arities,
        class_arity=len(class_categories),
        feature_names=[c.name for c in features],
        class_name=cls.name,
        class_categories=class_categories,
        feature_categories=feature_categories,
        model=out_model,
        n_imputed=n_imputed,
    )


def _nominal_column(name: str, codes, arity: int, prefix: str) -> Column:
    cats = [f"{prefix}{i}" for i in range(arity)]
    return Column(name, "nominal", [cats[int(c)] for c in codes], categories=cats)


def synth_xor(
    n_rows: int = 256,
    n_distractors: int = 8,
    p_shared: float = 0.15,
    p_private: float = 0.02,
    seed: int = 0,
) -> RawDataset:
    """Parity benchmark: the class is the XOR of two marginally useless bits.

    The first two features jointly determine the class but each alone has
    zero mutual information with it (n_rows should be a multiple of 4 so the
    four bit patterns balance exactly).  The distractors are noisy joint
    copies of the parity pair: one error pattern at rate ``p_shared`` is
    shared by all of them, plus independent flips at rate ``p_private``, so
    each distractor looks strongly relevant on its own while adding almost
    nothing once another distractor is in hand.
    """
    rng = np.random.default_rng(seed)
    base = np.arange(n_rows) % 4
    f1, f2 = base // 2, base % 2
    y = f1 ^ f2
    e1 = (rng.random(n_rows) < p_shared).astype(np.int64)
    e2 = (rng.random(n_rows) < p_shared).astype(np.int64)
    columns = [
        _nominal_column("parity_a", f1, 2, "v"),
        _nominal_column("parity_b", f2, 2, "v"),
    ]
    for d in range(n_distractors):
        u1 = (rng.random(n_rows) < p_private).astype(np.int64)
        u2 = (rng.random(n_rows) < p_private).astype(np.int64)
        col = 2 * (f1 ^ e1 ^ u1) + (f2 ^ e2 ^ u2)
        columns.append(_nominal_column(f"noisy_{d}", col, 4, "v"))
    columns.append(_nominal_column("xor", y, 2, "c"))
    return RawDataset(relation="synth_xor", columns=columns, class_index=len(columns) - 1)


def synth_duplicate() -> RawDataset:
    """Redundancy benchmark: feature two is an exact copy of feature one.

    Deterministic 1024-row layout.  In each 512-row class stratum the strong
    feature and the weak one agree with the class in fixed counts, so every
    information quantity involved is an exact ratio of small integers: the
    copy carries zero additional information while the weak feature carries
    a little, and a redundancy-aware selector must prefer the weak feature
    over the copy in its second pick.
    """
    rows = []
    for c in (0, 1):
        for f1_ok, f3_ok, count in ((1, 1, 381), (1, 0, 127), (0, 1, 3), (0, 0, 1)):
            f1 = c if f1_ok else 1 - c
            f3 = c if f3_ok else 1 - c
            rows += [(f1, f1, f3, c)] * count
    a = np.array(rows, dtype=np.int64)
    columns = [
        _nominal_column("strong", a[:, 0], 2, "v"),
        _nominal_column("copy", a[:, 1], 2, "v"),
        _nominal_column("weak", a[:, 2], 2, "v"),
        _nominal_column("label", a[:, 3], 2, "c"),
    ]
    return RawDataset(relation="synth_duplicate", columns=columns, class_index=3)


def synth_planted(n_rows: int = 500, n_features: int = 30, seed: int = 0) -> RawDataset:
    """Needle-in-haystack benchmark: class is the majority vote of three bits.

    Features 0..2 are the voting bits; the rest are independent coin flips.
    """
    if n_features < 3:
        raise ValueError("n_features must be at least 3")
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(n_rows, 3))
    y = (bits.sum(axis=1) >= 2).astype(np.int64)
    noise = rng.integers(0, 2, size=(n_rows, n_features - 3))
    columns = [_nominal_column(f"bit_{j}", bits[:, j], 2, "v") for j in range(3)]
    columns += [
        _nominal_column(f"noise_{j}", noise[:, j], 2, "v") for j in range(n_features - 3)
    ]
    columns.append(_nominal_column("majority", y, 2, "c"))
    return RawDataset(
        relation="synth_planted", columns=columns, class_index=len(columns) - 1
    )
