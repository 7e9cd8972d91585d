"""Turn result documents into the text printed on standard output."""
import json
from pathlib import Path
from typing import Any, Mapping

from .exceptions import ConfigValueError
from .jinja.environment import JINJA_ENVIRONMENT
from .utils import read_file

TEMPLATE_DIR = Path(__file__).parent / "templates"


def render_json(document: Mapping[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=True)


def render_text(command: str, document: Mapping[str, Any]) -> str:
    template_content = read_file(TEMPLATE_DIR / f"{command}.txt.j2")
    template = JINJA_ENVIRONMENT.from_string(template_content)
    return template.render(document, document=document).rstrip("\n")


def render(command: str, document: Mapping[str, Any], output_format: str = "json") -> str:
    """Render the result document of a command in the requested format.

    Raises:
        ConfigValueError: On an unknown output format.
    """
    if output_format == "json":
        return render_json(document)
    if output_format == "text":
        return render_text(command, document)
    raise ConfigValueError(f"Unknown output format '{output_format}'")
