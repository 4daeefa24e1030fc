import enum
from dataclasses import dataclass
from typing import Optional

import hullscope.exceptions
from hullscope.models.mixins import ModelSerializer


class WaveletFamily(enum.Enum):
    HAAR = 'haar'
    D4 = 'db4'

    @classmethod
    def parse(cls, name):
        aliases = {'haar': cls.HAAR, 'db4': cls.D4, 'd4': cls.D4,
                   'daubechies4': cls.D4}
        try:
            return aliases[str(name).lower()]
        except KeyError:
            raise hullscope.exceptions.ArgumentException(
                'Unknown wavelet family %s; expected haar or db4.' % name)


@dataclass(frozen=True)
class WaveletSpec(ModelSerializer):
    """Wavelet family, decomposition depth and optional top-k coefficient mask."""
    family: WaveletFamily = WaveletFamily.HAAR
    levels: int = 2
    keep_top: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.family, WaveletFamily):
            object.__setattr__(self, 'family', WaveletFamily.parse(self.family))
        if self.levels < 1:
            raise hullscope.exceptions.ArgumentException(
                'At least one decomposition level is required.')
        if self.keep_top is not None and self.keep_top < 1:
            raise hullscope.exceptions.ArgumentException(
                'keep_top must be at least 1.')

    def check_length(self, length):
        """Raise unless the length splits evenly `levels` times."""
        if length < 2 ** self.levels or length % (2 ** self.levels) != 0:
            raise hullscope.exceptions.ArgumentException(
                'Length %d is not divisible by 2^%d.' % (length, self.levels))
