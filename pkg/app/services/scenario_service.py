"""
Scenario Service

Loading of JSON scenario files into validated sweep configurations, with
diagnostics that point at the offending line of the file.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import ScenarioError
from app.schemas.scenario import ScenarioConfig, ScenarioFile


logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent


def scenario_dir() -> Path:
    """Directory of bundled scenarios; relative settings resolve against the project root."""
    path = Path(settings.SCENARIO_DIR)
    if not path.is_absolute() and not path.exists():
        path = PROJECT_ROOT / path
    return path


def list_scenarios() -> List[str]:
    """File names of the bundled scenarios, sorted."""
    directory = scenario_dir()
    if not directory.is_dir():
        return []
    return sorted(p.name for p in directory.glob("*.json"))


def resolve_scenario(name_or_path: Union[str, Path]) -> Path:
    """A path as given if it exists, otherwise a bundled scenario of that name."""
    path = Path(name_or_path)
    if path.exists():
        return path
    bundled = scenario_dir() / path.name
    if bundled.exists():
        return bundled
    return path


def _line_of(text: str, loc: Sequence[Union[str, int]]) -> Optional[int]:
    """1-based line of the last key of a validation location, searched in document order."""
    position = 0
    found = None
    for key in loc:
        if not isinstance(key, str):
            continue
        index = text.find(f'"{key}"', position)
        if index < 0:
            break
        position = index + len(key) + 2
        found = index
    if found is None:
        return None
    return text.count("\n", 0, found) + 1


def _describe(error: dict) -> str:
    loc = ".".join(str(part) for part in error.get("loc", ()))
    message = error.get("msg", "invalid value")
    return f"{loc}: {message}" if loc else message


def parse_scenario(text: str, path: Optional[str] = None) -> ScenarioFile:
    """
    Parse and validate scenario text.

    Raises:
        ScenarioError: on malformed JSON, unknown keys or any violated
            system invariant, with the line of the first problem when known
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(e.msg, path=path, line=e.lineno) from e

    try:
        return ScenarioFile.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        raise ScenarioError(_describe(first), path=path, line=_line_of(text, first.get("loc", ()))) from e


def load_scenario_file(name_or_path: Union[str, Path]) -> ScenarioFile:
    path = resolve_scenario(name_or_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read scenario ({e.strerror or e})", path=str(path)) from e
    scenario = parse_scenario(text, str(path))
    logger.debug("Loaded scenario %s", path)
    return scenario


def load_scenario(
    name_or_path: Union[str, Path],
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> ScenarioConfig:
    """Load a scenario file and apply command-line overrides of trials and seed."""
    scenario = load_scenario_file(name_or_path)
    update = {}
    if trials is not None:
        update["trials"] = trials
    if seed is not None:
        update["seed"] = seed
    if not update:
        return scenario.to_config()
    try:
        sweep = scenario.sweep.model_validate({**scenario.sweep.model_dump(), **update})
    except ValidationError as e:
        raise ScenarioError(_describe(e.errors()[0]), path=str(name_or_path)) from e
    return scenario.model_copy(update={"sweep": sweep}).to_config()
