"""JSON documents and the ``lie2kit`` command."""

from .documents import Document, FormatError, dumps, from_json, load_path, loads, to_json
from .main import main, verify_document

