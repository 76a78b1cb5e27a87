import json
from enum import Enum
from typing import Any, Optional


class ErrorMessageMixin:
    error_message: Optional[str] = None


def _plain(val: Any) -> Any:
    # Enum → its .value, containers recursively, everything else untouched
    if isinstance(val, Enum):
        return val.value
    if isinstance(val, dict):
        return {k: _plain(v) for k, v in val.items()}
    if isinstance(val, (list, tuple)):
        return [_plain(v) for v in val]
    return val


class JsonDocumentMixin:
    """read and write pydantic models as the json documents of the cli"""

    @classmethod
    def model_from_text(cls, text: str):
        return cls.model_validate_json(text)

    def model_dump_document(self) -> dict:
        return _plain(self.model_dump(mode='json', exclude_none=True))

    def model_dump_text(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.model_dump_document(), indent=indent, sort_keys=False)
