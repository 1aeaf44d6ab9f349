import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Tuple, Union
from uuid import UUID

from pydantic import BaseModel

from ..grammar.parser import format_grammar, parse_grammar
from ..models.certificate import Certificate
from ..models.grammar import Grammar
from ..models.ordinal import Ordinal

SCHEMA_VERSION = 1

PathLike = Union[str, Path]


class CustomJSONEncoder(json.JSONEncoder):
    def default(self, obj: Any) -> Any:
        if isinstance(obj, UUID):
            return str(obj)
        if isinstance(obj, datetime):
            return obj.isoformat()
        if isinstance(obj, Ordinal):
            return str(obj)
        if isinstance(obj, BaseModel):
            return obj.model_dump(mode="json")
        return super().default(obj)


def dump_document(payload: Dict[str, Any]) -> str:
    """Render a versioned JSON document; `schema` always comes first."""
    return json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, cls=CustomJSONEncoder)


def certificate_path(grammar_path: PathLike) -> Path:
    """Where `synth --out` puts the certificate next to a grammar file."""
    path = Path(grammar_path)
    return path.with_name(f"{path.stem}.cert.json")


class ArtifactStore:
    """Grammar files, certificates and reports on disk."""

    def __init__(self, data_dir: PathLike = "data/synth"):
        self.data_dir = Path(data_dir)

    def _resolve(self, path: PathLike) -> Path:
        path = Path(path)
        return path if path.is_absolute() or path.parent != Path(".") else self.data_dir / path

    def load_grammar(self, path: PathLike) -> Grammar:
        return parse_grammar(Path(path).read_text())

    def save_grammar(self, path: PathLike, grammar: Grammar) -> Path:
        target = self._resolve(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(format_grammar(grammar))
        return target

    def load_certificate(self, path: PathLike) -> Certificate:
        data = json.loads(Path(path).read_text())
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"{path}: unsupported certificate schema {data.get('schema')!r}")
        return Certificate.model_validate(data["certificate"])

    def save_certificate(self, path: PathLike, certificate: Certificate) -> Path:
        target = self._resolve(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(dump_document({"certificate": certificate}))
        return target

    def save_synthesis(
        self, stem: PathLike, grammar: Grammar, certificate: Certificate
    ) -> Tuple[Path, Path]:
        """Write STEM.cfg and STEM.cert.json."""
        stem = self._resolve(stem)
        grammar_file = self.save_grammar(stem.with_name(f"{stem.name}.cfg"), grammar)
        cert_file = self.save_certificate(certificate_path(grammar_file), certificate)
        return grammar_file, cert_file

    def save_report(self, path: PathLike, payload: Dict[str, Any]) -> Path:
        target = self._resolve(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(dump_document(payload))
        return target
