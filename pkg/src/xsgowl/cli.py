"""Command-line pipeline: XML (or XSD) sources in, ontology files out.

Each input is processed independently into its own local ontology under
<base-iri>/<stem>; nothing is merged across sources. Exit codes: 0 ok,
1 usage, 2 XML parse error or unreadable input, 3 schema or validation
error, 4 internal invariant violation (a bug). With several inputs every
source is attempted and the first nonzero code in input order wins.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .abox import NamingCollision, populate
from .infer import InferenceConflict, RootMismatch, infer_schema
from .owlgen import GenOptions, generate_tbox, write_trace
from .owlmodel import check_dl_profile, serialize_rdfxml, serialize_turtle
from .xmldoc import ParseError, parse_xml
from .xsdmodel import SchemaError, read_schema, serialize_schema, validate
from .xsg import EmptySchema, build_xsg, to_dot

logger = logging.getLogger("xsgowl")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SCHEMA = 3
EXIT_INTERNAL = 4


@dataclass
class RunConfig:
    inputs: list[str]
    out_dir: str = "."
    base_iri: str = "http://example.org/onto"
    format: str = "turtle"  # turtle | rdfxml | both
    emit_schema: bool = False
    emit_dot: bool = False
    emit_trace: bool = False
    with_instances: bool = False
    with_cardinality: bool = False
    strict_dl: bool = False
    literal_domains: bool = False
    log_level: str = "normal"  # quiet | normal | verbose
    input_kind: str | None = None  # xml | xsd | None = by extension


class _SourceFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _WarningCounter(logging.Handler):
    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.count = 0

    def emit(self, record):
        self.count += 1


def _atomic_write(path: Path, content: str):
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)  # mkstemp defaults to 0600
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _SourceFailure(EXIT_PARSE, f"cannot read {path}: {exc.strerror}")


def _source_kind(path: str, override: str | None) -> str:
    if override is not None:
        return override
    suffix = Path(path).suffix.lower()
    if suffix == ".xsd":
        return "xsd"
    if suffix == ".xml":
        return "xml"
    raise _SourceFailure(
        EXIT_USAGE,
        f"cannot tell whether {path} is XML data or a schema; pass --input-kind",
    )


def _load_schema(path: str, kind: str):
    """(schema, document-or-None) for one source file."""
    data = _read_bytes(path)
    if kind == "xsd":
        try:
            return read_schema(data, path), None
        except ParseError as exc:
            raise _SourceFailure(EXIT_PARSE, f"{path}: {exc}")
        except SchemaError as exc:
            raise _SourceFailure(EXIT_SCHEMA, f"{path}: {exc}")
    try:
        doc = parse_xml(data, path)
    except ParseError as exc:
        raise _SourceFailure(EXIT_PARSE, f"{path}: {exc}")
    try:
        return infer_schema([doc]), doc
    except (RootMismatch, InferenceConflict) as exc:
        raise _SourceFailure(EXIT_SCHEMA, f"{path}: {exc}")


def _process_source(path: str, cfg: RunConfig) -> str:
    stem = Path(path).stem
    out_dir = Path(cfg.out_dir)
    kind = _source_kind(path, cfg.input_kind)
    schema, doc = _load_schema(path, kind)

    if cfg.emit_schema:
        _atomic_write(out_dir / f"{stem}.xsd", serialize_schema(schema))

    try:
        graph = build_xsg(schema)
    except EmptySchema as exc:
        raise _SourceFailure(EXIT_SCHEMA, f"{path}: {exc}")
    if cfg.emit_dot:
        _atomic_write(out_dir / f"{stem}.dot", to_dot(graph))

    opts = GenOptions(
        base_iri=f"{cfg.base_iri}/{stem}",
        emit_cardinality=cfg.with_cardinality,
        union_domains=not cfg.literal_domains,
        strict_dl=cfg.strict_dl,
    )
    ontology, trace = generate_tbox(schema, graph, opts)
    for warning in check_dl_profile(ontology):
        logger.warning("%s: %s", stem, warning)
    if cfg.emit_trace:
        _atomic_write(out_dir / f"{stem}.trace.tsv", write_trace(trace))

    if cfg.with_instances:
        if doc is None:
            logger.warning(
                "%s: --with-instances has no effect on schema inputs", stem
            )
        else:
            report = validate(doc, schema)
            if not report.ok:
                details = "; ".join(str(v) for v in report.violations[:5])
                raise _SourceFailure(
                    EXIT_SCHEMA, f"{path}: document does not validate: {details}"
                )
            try:
                ontology = populate(doc, schema, ontology, trace)
            except NamingCollision as exc:
                raise _SourceFailure(EXIT_SCHEMA, f"{path}: {exc}")

    if cfg.format in ("turtle", "both"):
        _atomic_write(out_dir / f"{stem}.ttl", serialize_turtle(ontology))
    if cfg.format in ("rdfxml", "both"):
        _atomic_write(out_dir / f"{stem}.rdf", serialize_rdfxml(ontology))

    return (
        f"{stem}: {len(ontology.classes)} classes, "
        f"{len(ontology.object_properties)} object properties, "
        f"{len(ontology.datatype_properties)} datatype properties, "
        f"{len(ontology.individuals)} individuals"
    )


def cmd_generate(cfg: RunConfig) -> int:
    Path(cfg.out_dir).mkdir(parents=True, exist_ok=True)
    exit_code = EXIT_OK
    for path in cfg.inputs:
        counter = _WarningCounter()
        logger.addHandler(counter)
        try:
            summary = _process_source(path, cfg)
            print(f"{summary}, {counter.count} warnings")
        except _SourceFailure as exc:
            logger.error("%s", exc)
            if exit_code == EXIT_OK:
                exit_code = exc.code
        except Exception:
            logger.exception("internal error while processing %s", path)
            if exit_code == EXIT_OK:
                exit_code = EXIT_INTERNAL
        finally:
            logger.removeHandler(counter)
    return exit_code


def cmd_infer_schema(input_path: str, output_path: str,
                     input_kind: str | None = None) -> int:
    try:
        data = _read_bytes(input_path)
        try:
            doc = parse_xml(data, input_path)
            schema = infer_schema([doc])
        except ParseError as exc:
            raise _SourceFailure(EXIT_PARSE, f"{input_path}: {exc}")
        except (RootMismatch, InferenceConflict) as exc:
            raise _SourceFailure(EXIT_SCHEMA, f"{input_path}: {exc}")
        _atomic_write(Path(output_path), serialize_schema(schema))
    except _SourceFailure as exc:
        logger.error("%s", exc)
        return exc.code
    except Exception:
        logger.exception("internal error while processing %s", input_path)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_graph(input_path: str, output_path: str,
              input_kind: str | None = None) -> int:
    try:
        kind = _source_kind(input_path, input_kind)
        schema, _ = _load_schema(input_path, kind)
        try:
            graph = build_xsg(schema)
        except EmptySchema as exc:
            raise _SourceFailure(EXIT_SCHEMA, f"{input_path}: {exc}")
        _atomic_write(Path(output_path), to_dot(graph))
    except _SourceFailure as exc:
        logger.error("%s", exc)
        return exc.code
    except Exception:
        logger.exception("internal error while processing %s", input_path)
        return EXIT_INTERNAL
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _setup_logging(level_name: str):
    level_name = os.environ.get("XSGOWL_LOG", level_name)
    display = {"quiet": logging.ERROR, "normal": logging.WARNING,
               "verbose": logging.DEBUG}.get(level_name, logging.WARNING)
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(display)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    logger.handlers = [h for h in logger.handlers
                       if not isinstance(h, logging.StreamHandler)]
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)  # handlers filter; counters see warnings


def _build_parser() -> _Parser:
    parser = _Parser(prog="xsgowl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="XML/XSD sources to OWL ontologies")
    gen.add_argument("inputs", nargs="+", metavar="INPUT")
    gen.add_argument("--out-dir", default=".")
    gen.add_argument("--base-iri", default="http://example.org/onto")
    gen.add_argument("--format", choices=["turtle", "rdfxml", "both"],
                     default="turtle")
    gen.add_argument("--emit-schema", action="store_true")
    gen.add_argument("--emit-dot", action="store_true")
    gen.add_argument("--emit-trace", action="store_true")
    gen.add_argument("--with-instances", action="store_true")
    gen.add_argument("--with-cardinality", action="store_true")
    gen.add_argument("--strict-dl", action="store_true")
    gen.add_argument("--literal-domains", action="store_true")
    gen.add_argument("--input-kind", choices=["xml", "xsd"])
    gen.add_argument("--log-level", choices=["quiet", "normal", "verbose"],
                     default="normal")

    inf = sub.add_parser("infer-schema", help="infer an XSD from an XML document")
    inf.add_argument("input", metavar="INPUT")
    inf.add_argument("output", metavar="OUTPUT")
    inf.add_argument("--log-level", choices=["quiet", "normal", "verbose"],
                     default="normal")

    gr = sub.add_parser("graph", help="write the schema graph as Graphviz DOT")
    gr.add_argument("input", metavar="INPUT")
    gr.add_argument("output", metavar="OUTPUT")
    gr.add_argument("--input-kind", choices=["xml", "xsd"])
    gr.add_argument("--log-level", choices=["quiet", "normal", "verbose"],
                    default="normal")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    _setup_logging(args.log_level)
    if args.command == "generate":
        cfg = RunConfig(
            inputs=args.inputs,
            out_dir=args.out_dir,
            base_iri=args.base_iri,
            format=args.format,
            emit_schema=args.emit_schema,
            emit_dot=args.emit_dot,
            emit_trace=args.emit_trace,
            with_instances=args.with_instances,
            with_cardinality=args.with_cardinality,
            strict_dl=args.strict_dl,
            literal_domains=args.literal_domains,
            log_level=args.log_level,
            input_kind=args.input_kind,
        )
        if not cfg.base_iri.startswith(("http://", "https://", "urn:", "file://")):
            logger.error("--base-iri must be absolute, got %r", cfg.base_iri)
            return EXIT_USAGE
        return cmd_generate(cfg)
    if args.command == "infer-schema":
        return cmd_infer_schema(args.input, args.output)
    return cmd_graph(args.input, args.output, args.input_kind)


if __name__ == "__main__":
    sys.exit(main())
