from pathlib import Path
from typing import List, Union

import pyexcel

from .exceptions import ExportError
from .gauss import TwistedGaussCode
from .invariants import affine_table, crossing_index
from .log import log

TABLE_HEADER = ["chord", "sign", "index", "ind_over", "rho", "p_over", "p_under"]


def affine_rows(code: TwistedGaussCode) -> List[List[int]]:
    return [[
        data.chord_id,
        code.signs[data.chord_id],
        crossing_index(code, data.chord_id),
        data.ind_over,
        data.rho,
        data.p_over,
        data.p_under,
    ] for data in affine_table(code)]


def export_affine_table(code: TwistedGaussCode, path: Union[str, Path]) -> Path:
    """Write the per chord affine index table to a spreadsheet.

    The file format follows the extension of ``path`` (csv, xlsx, ...).

    Raises:
        ExportError: If the file cannot be written in that format.
    """
    path = Path(path)
    if not path.suffix:
        raise ExportError(f"Cannot tell the spreadsheet format of '{path}' without a file extension")
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        pyexcel.save_as(array=[TABLE_HEADER] + affine_rows(code), dest_file_name=str(path))
    except Exception as ex:  #pylint: disable=broad-except
        raise ExportError(f"Failed to export the chord table to '{path}': {ex}") from ex
    log.v("Exported %d chord rows to '%s'", len(code.chord_ids), path)
    return path
