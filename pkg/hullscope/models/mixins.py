import dataclasses
import enum
import math

import numpy as np


class ModelSerializer:
    """Base model serializer mixin for dataclass models."""
    # Exclude these fields from all models.
    base_exclude_fields = []
    serialize_exclude_fields = []

    def serialize_type(self, obj, exclusions=None, override_mask=None):
        """Recursively serialize according to type."""
        if getattr(obj, 'serialize', None):
            return obj.serialize(exclusions, override_mask)
        elif isinstance(obj, np.ndarray):
            return self.serialize_list(obj.tolist(), exclusions, override_mask)
        elif isinstance(obj, (list, tuple)):
            return self.serialize_list(obj, exclusions, override_mask)
        elif isinstance(obj, dict):
            return {str(key): self.serialize_type(value, exclusions, override_mask)
                    for key, value in obj.items()}
        elif isinstance(obj, enum.Enum):
            return obj.value
        elif isinstance(obj, (bool, np.bool_)):
            return bool(obj)
        elif isinstance(obj, (int, np.integer)):
            return int(obj)
        elif isinstance(obj, (float, np.floating)):
            value = float(obj)
            # JSON has no infinities; reports write them as null.
            return value if math.isfinite(value) else None
        elif obj is None:
            return None
        return str(obj)

    def serialize(self, exclusions=None, override_mask=None):
        """Serialize model fields recursively subject to exclusions."""
        result = {}
        model_name = type(self).__name__
        if override_mask is not None and model_name in override_mask:
            for column in override_mask[model_name]:
                result[column] = self.serialize_type(
                    getattr(self, column), exclusions, override_mask)
            return result
        for field in dataclasses.fields(self):
            column = field.name
            if column in self.base_exclude_fields:
                continue
            if column in self.serialize_exclude_fields:
                continue
            if exclusions is not None and model_name in exclusions \
                    and column in exclusions[model_name]:
                continue
            result[column] = self.serialize_type(
                getattr(self, column), exclusions, override_mask)
        return result

    def serialize_list(self, items, exclusions=None, override_mask=None):
        """Serialize a list of objects."""
        return [self.serialize_type(item, exclusions, override_mask)
                for item in items]
