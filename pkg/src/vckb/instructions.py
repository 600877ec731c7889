"""Instruction-tuning sample generation.

Every (object, category) pair with at least one triple yields one sample.
Seen targets sample m tails uniformly without replacement; unseen targets
take the top-k tails of the sorted list plus j random tails from the
remainder. Tails are joined with the separator token. Sampling is seeded
per pair from a hash of (seed, image id, object id, category), so output
does not depend on iteration or worker order.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, fields
from importlib import resources

from .errors import InvalidConfig, IoFailure, MalformedRecord
from .dataset import DatasetRecord, _escape, _unescape
from .seen import DEFAULT_TAU
from .taxonomy import ALL_CATEGORIES, Visibility

DEFAULT_SEP = "[sep]"


@dataclass(frozen=True)
class ExportConfig:
    m: int = 3  # seen tails sampled per pair
    k: int = 5  # top unseen tails kept
    j: int = 2  # random extra unseen tails
    tau: float = DEFAULT_TAU
    seed: int = 0
    sep_token: str = DEFAULT_SEP
    dedup_unseen: bool = True
    template_path: str | None = None

    def __post_init__(self):
        for name in ("m", "k", "j"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidConfig(f"{name} must be an integer, got {value!r}")
        if self.m < 1:
            raise InvalidConfig(f"m must be >= 1, got {self.m}")
        if self.k < 0 or self.j < 0:
            raise InvalidConfig(f"k and j must be >= 0, got k={self.k} j={self.j}")
        if not isinstance(self.tau, (int, float)) or not 0 < self.tau <= 1:
            raise InvalidConfig(f"tau must be in (0, 1], got {self.tau!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise InvalidConfig(f"seed must be an integer, got {self.seed!r}")
        if self.seed.bit_length() > 64:
            raise InvalidConfig(f"seed must fit in 64 bits, got {self.seed}")
        if not isinstance(self.sep_token, str) or not self.sep_token:
            raise InvalidConfig("sep_token must be a non-empty string")

    @classmethod
    def load(cls, config_path=None, **overrides) -> "ExportConfig":
        """Build a config from an optional JSON file plus keyword overrides."""
        values = {}
        if config_path is not None:
            try:
                with open(config_path, encoding="utf-8") as handle:
                    values = json.load(handle)
            except OSError as exc:
                raise IoFailure(f"cannot read config {config_path}: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise InvalidConfig(f"bad JSON in {config_path}: {exc}") from exc
            known = {f.name for f in fields(cls)}
            unknown = set(values) - known
            if unknown:
                raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
        for key, value in overrides.items():
            if value is not None:
                values[key] = value
        return cls(**values)


@dataclass(frozen=True)
class InstructionTemplates:
    template: str
    descriptions: dict[str, str]

    def __post_init__(self):
        missing = [c.text for c in ALL_CATEGORIES if c.text not in self.descriptions]
        if missing:
            raise InvalidConfig(f"template file lacks descriptions for: {missing}")

    @classmethod
    def load(cls, path=None) -> "InstructionTemplates":
        if path is None:
            payload = json.loads(
                resources.files("vckb")
                .joinpath("data/instruction_templates.json")
                .read_text(encoding="utf-8")
            )
        else:
            try:
                with open(path, encoding="utf-8") as handle:
                    payload = json.load(handle)
            except OSError as exc:
                raise IoFailure(f"cannot read templates {path}: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise InvalidConfig(f"bad JSON in {path}: {exc}") from exc
        try:
            return cls(
                template=payload["template"], descriptions=dict(payload["descriptions"])
            )
        except (KeyError, TypeError) as exc:
            raise InvalidConfig(f"template file needs 'template' and 'descriptions': {exc}")


@dataclass(frozen=True)
class InstructionSample:
    image_id: str
    object_id: str
    category: str
    instruction: str
    target: str


def _pair_rng(seed: int, image_id: str, object_id: str, category: str) -> random.Random:
    key = "\x1f".join((str(seed), image_id, object_id, category)).encode("utf-8")
    digest = hashlib.sha256(key).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def build_instruction_samples(
    record: DatasetRecord,
    config: ExportConfig,
    templates: InstructionTemplates | None = None,
) -> list[InstructionSample]:
    """Render one (instruction, target) pair per non-empty (object, category)."""
    if templates is None:
        templates = InstructionTemplates.load(config.template_path)
    samples = []
    for entry in record.entries:
        obj = entry.obj
        for group in entry.groups:
            tails = [triple.tail for triple in group.triples]
            if not tails:
                continue
            category = group.category
            rng = _pair_rng(config.seed, record.image_id, obj.object_id, category.text)
            if category.visibility is Visibility.SEEN:
                chosen = rng.sample(tails, min(config.m, len(tails)))
            else:
                if config.k + config.j < 1:
                    raise InvalidConfig("unseen export needs k + j >= 1")
                top = tails[: config.k]
                rest = tails[config.k :]
                chosen = top + rng.sample(rest, min(config.j, len(rest)))
            box = obj.bbox
            instruction = templates.template.format(
                image_id=record.image_id,
                description=templates.descriptions[category.text],
                name=obj.name,
                x=box.x,
                y=box.y,
                w=box.w,
                h=box.h,
            )
            samples.append(
                InstructionSample(
                    image_id=record.image_id,
                    object_id=obj.object_id,
                    category=category.text,
                    instruction=instruction,
                    target=config.sep_token.join(chosen),
                )
            )
    return samples


def write_instruction_samples(samples: list[InstructionSample], path) -> None:
    """One `instruction <tab> target` line per sample, escaped like datasets."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for sample in samples:
                handle.write(f"{_escape(sample.instruction)}\t{_escape(sample.target)}\n")
    except OSError as exc:
        raise IoFailure(f"cannot write samples to {path}: {exc}") from exc


def read_instruction_samples(path) -> list[tuple[str, str]]:
    """Read back (instruction, target) pairs written by write_instruction_samples."""
    pairs = []
    try:
        with open(path, encoding="utf-8") as handle:
            for line_number, raw in enumerate(handle, start=1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise MalformedRecord(path, line_number, "expected instruction<TAB>target")
                pairs.append((_unescape(parts[0]), _unescape(parts[1])))
    except OSError as exc:
        raise IoFailure(f"cannot read samples from {path}: {exc}") from exc
    return pairs
