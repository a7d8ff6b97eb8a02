"""Chat-completion client over HTTPS.

Vendor-neutral: any endpoint accepting the standard
``{"model", "messages": [{"role", "content"}]}`` shape works. Transient
failures (connect errors, timeouts, 429/5xx) are retried with backoff.
"""

from __future__ import annotations

import time

import httpx

from ..errors import AuthError, GeneratorUnavailable
from .base import GenRequest, GenResponse
from .parsing import split_items
from .templates import render

_TRANSIENT = {429, 500, 502, 503, 504}


class RemoteGenerator:
    def __init__(
        self,
        endpoint: str,
        api_key: str | None = None,
        model: str = "default",
        timeout: float = 30.0,
        retries: int = 2,
        backoff: float = 0.5,
        client: httpx.Client | None = None,
    ):
        self.endpoint = endpoint
        self.api_key = api_key
        self.model = model
        self.retries = retries
        self.backoff = backoff
        self._client = client or httpx.Client(timeout=timeout)

    def generate(self, request: GenRequest) -> GenResponse:
        prompt = render(request.template_id, request.variables)
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
        }
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"

        last_error: str = "no attempt made"
        for attempt in range(self.retries + 1):
            if attempt:
                time.sleep(self.backoff * (2 ** (attempt - 1)))
            try:
                response = self._client.post(self.endpoint, json=payload, headers=headers)
            except httpx.HTTPError as exc:
                last_error = f"{type(exc).__name__}: {exc}"
                continue
            if response.status_code in (401, 403):
                raise AuthError(f"endpoint rejected credentials ({response.status_code})")
            if response.status_code in _TRANSIENT:
                last_error = f"status {response.status_code}"
                continue
            if response.status_code != 200:
                raise GeneratorUnavailable(f"unexpected status {response.status_code}")
            return self._parse(response)
        raise GeneratorUnavailable(f"gave up after {self.retries + 1} attempts: {last_error}")

    def _parse(self, response: httpx.Response) -> GenResponse:
        try:
            content = response.json()["choices"][0]["message"]["content"]
        except (ValueError, LookupError, TypeError) as exc:
            raise GeneratorUnavailable(f"malformed completion payload: {exc}") from exc
        return GenResponse(raw=content, parsed=tuple(split_items(content)))
