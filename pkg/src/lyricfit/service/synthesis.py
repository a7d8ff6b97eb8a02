"""Singing-synthesis client: ABC text in, audio reference out.

Results are cached by content hash — replaying the same melody+lyrics
is free, and writers replay often.
"""

from __future__ import annotations

import hashlib
import threading
from typing import Protocol, runtime_checkable

import httpx

from ..errors import SynthesisUnavailable


@runtime_checkable
class Synthesizer(Protocol):
    def synthesize(self, abc_text: str) -> str:
        """Return an audio reference (URL or opaque token) for the ABC tune."""


def _content_key(abc_text: str) -> str:
    return hashlib.sha256(abc_text.encode("utf-8")).hexdigest()[:16]


class CachingSynthesizer:
    """Wraps any synthesizer with a (melody, lyrics)-content cache."""

    def __init__(self, inner: Synthesizer):
        self._inner = inner
        self._cache: dict[str, str] = {}
        self._lock = threading.Lock()

    def synthesize(self, abc_text: str) -> str:
        key = _content_key(abc_text)
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        audio = self._inner.synthesize(abc_text)
        with self._lock:
            self._cache[key] = audio
        return audio

    def cached(self, abc_text: str) -> bool:
        with self._lock:
            return _content_key(abc_text) in self._cache


class StubSynthesizer:
    """Offline stand-in: a deterministic token derived from the content."""

    def synthesize(self, abc_text: str) -> str:
        return f"stub-audio:{_content_key(abc_text)}"


class RemoteSynthesizer:
    """POSTs the ABC tune to a synthesis endpoint returning an audio URL."""

    def __init__(self, endpoint: str, timeout: float = 60.0, client: httpx.Client | None = None):
        self.endpoint = endpoint
        self._client = client or httpx.Client(timeout=timeout)

    def synthesize(self, abc_text: str) -> str:
        try:
            response = self._client.post(self.endpoint, json={"abc": abc_text})
        except httpx.HTTPError as exc:
            raise SynthesisUnavailable(f"synthesis request failed: {exc}") from exc
        if response.status_code != 200:
            raise SynthesisUnavailable(
                f"synthesis endpoint returned {response.status_code}"
            )
        try:
            return response.json()["audio_url"]
        except (ValueError, KeyError) as exc:
            raise SynthesisUnavailable("synthesis response missing audio_url") from exc


def build_synthesizer(endpoint: str | None) -> CachingSynthesizer:
    inner = RemoteSynthesizer(endpoint) if endpoint else StubSynthesizer()
    return CachingSynthesizer(inner)
