from abc import ABC, abstractmethod
from typing import Dict, Optional, Type

import galois
from pydantic import BaseModel, Field

from src.codec import HermitianCode
from src.schema import DecodeReport, DecoderKind


class BaseDecoder(BaseModel, ABC):
    """Abstract base class for decoders of one fixed Hermitian code.

    Subclasses validate their parameters on construction and implement
    `decode`, which never raises for a decoding failure: it returns a
    report with status FAILURE and a reason.
    """

    name: str = Field(..., description="Decoder name as used in reports")
    description: Optional[str] = Field(None, description="Optional decoder description")
    code: HermitianCode = Field(..., description="The code being decoded")

    class Config:
        arbitrary_types_allowed = True
        extra = "allow"

    @abstractmethod
    def decode(self, received: galois.FieldArray) -> DecodeReport:
        """Decode one received word."""

    @property
    def params(self) -> Dict[str, int]:
        return {}


class DecoderFactory:
    """Factory for decoders by kind"""

    @staticmethod
    def create(kind: DecoderKind, code: HermitianCode, **params) -> BaseDecoder:
        from src.decoder.gs import GSDecoder
        from src.decoder.power import PowerDecoder

        decoders: Dict[DecoderKind, Type[BaseDecoder]] = {
            DecoderKind.GS: GSDecoder,
            DecoderKind.POWER: PowerDecoder,
        }
        decoder_class = decoders.get(DecoderKind(kind))
        if not decoder_class:
            raise ValueError(f"Unknown decoder type: {kind}")
        return decoder_class.build(code, **params)
