"""Mock generator determinism and the remote chat-completion client."""

from concurrent.futures import ThreadPoolExecutor

import httpx
import pytest

from lyricfit.errors import AuthError, GeneratorUnavailable
from lyricfit.generation import (
    GenRequest,
    IdentityGenerator,
    MockGenerator,
    RemoteGenerator,
    parse_lines,
)
from lyricfit.prosody import count_line_syllables, rhyme_key


def revise_request(target: int, extra: str = "") -> GenRequest:
    return GenRequest(
        "revise_to_melody",
        {
            "input": "the moon again" + extra,
            "syllable_count": str(target),
            "theme": "night",
            "key_words": "moon",
            "context": "",
        },
        max_items=1,
    )


class TestMockGenerator:
    def test_same_seed_same_response(self):
        a = MockGenerator(seed=7)
        b = MockGenerator(seed=7)
        request = revise_request(6)
        assert a.generate(request) == b.generate(request)
        assert a.generate(request) == a.generate(request)

    def test_transcript_independent_of_call_order(self):
        first = MockGenerator(seed=3)
        second = MockGenerator(seed=3)
        r1 = revise_request(5)
        r2 = GenRequest("brainstorm", {"input": "rain", "title": "T", "theme": "x"}, 5)
        assert (first.generate(r1), first.generate(r2)) == (
            second.generate(r2),
            second.generate(r1),
        )[::-1]

    def test_seeds_change_output(self):
        request = revise_request(8)
        outputs = {MockGenerator(seed=s).generate(request).raw for s in range(8)}
        assert len(outputs) > 1

    def test_revisions_hit_requested_syllable_count(self):
        for seed in range(5):
            generator = MockGenerator(seed=seed)
            for target in (1, 3, 6, 9, 12):
                line = generator.generate(revise_request(target)).parsed[0]
                assert count_line_syllables(line) == target, (seed, target, line)

    def test_rhyme_suggestions_share_the_rhyme_key(self):
        generator = MockGenerator(seed=11)
        for word in ("cat", "light", "education"):
            request = GenRequest(
                "rhyme_recs",
                {"word": word, "syllable_condition": "no syllable restriction",
                 "theme_condition": ""},
                max_items=8,
            )
            words = parse_lines(generator.generate(request).raw, 8)
            assert len(words) == 8
            assert all(rhyme_key(w) == rhyme_key(word) for w in words), words
            assert word not in words

    def test_rhyme_syllable_condition_respected(self):
        request = GenRequest(
            "rhyme_recs",
            {"word": "light", "syllable_condition": "2 syllables", "theme_condition": ""},
            max_items=8,
        )
        words = parse_lines(MockGenerator(seed=2).generate(request).raw, 8)
        assert all(count_line_syllables(w) == 2 for w in words)

    def test_rephrase_yields_distinct_variants(self):
        request = GenRequest(
            "rephrase", {"input": "the fight of the nights", "num_of_variants": "4"}, 4
        )
        variants = MockGenerator(seed=5).generate(request).parsed
        assert len(variants) == 4
        assert len({v.lower() for v in variants}) == 4
        assert all("fight" in v for v in variants)

    def test_brainstorm_phrases_mention_the_input(self):
        request = GenRequest(
            "brainstorm", {"input": "summer rain", "title": "T", "theme": "nostalgia"}, 5
        )
        phrases = MockGenerator(seed=1).generate(request).parsed
        assert len(phrases) == 5
        assert all(phrases)
        assert sum("summer rain" in p for p in phrases) == 5

    def test_draft_honors_line_count(self):
        request = GenRequest(
            "draft_full",
            {"title": "T", "theme": "sea", "key_words": "tide", "num_of_lines": "6"},
            max_items=6,
        )
        assert len(MockGenerator(seed=4).generate(request).parsed) == 6

    def test_concurrent_calls_agree(self):
        generator = MockGenerator(seed=9)
        request = revise_request(7)
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda _: generator.generate(request), range(16)))
        assert len({r.raw for r in results}) == 1

    def test_identity_generator_echoes_input(self):
        response = IdentityGenerator().generate(
            GenRequest("rephrase", {"input": "hold the line"}, 4)
        )
        assert response.parsed == ("hold the line",) * 4


def chat_payload(text: str) -> dict:
    return {"choices": [{"message": {"role": "assistant", "content": text}}]}


def make_remote(handler, **kwargs) -> RemoteGenerator:
    client = httpx.Client(transport=httpx.MockTransport(handler))
    kwargs.setdefault("backoff", 0.0)
    return RemoteGenerator("https://llm.example/v1/chat", client=client, **kwargs)


BRAINSTORM = GenRequest("brainstorm", {"input": "rain", "title": "T", "theme": "x"}, 5)


class TestRemoteGenerator:
    def test_success_round_trip(self):
        seen = {}

        def handler(request: httpx.Request) -> httpx.Response:
            seen["body"] = request.read().decode()
            seen["auth"] = request.headers.get("Authorization")
            return httpx.Response(200, json=chat_payload("alpha\nbeta"))

        generator = make_remote(handler, api_key="sk-test", model="melody-1")
        response = generator.generate(BRAINSTORM)
        assert response.raw == "alpha\nbeta"
        assert response.parsed == ("alpha", "beta")
        assert seen["auth"] == "Bearer sk-test"
        assert "generating phrases for songs" in seen["body"]
        assert "melody-1" in seen["body"]

    def test_two_transient_failures_then_success(self):
        calls = []

        def handler(request):
            calls.append(1)
            if len(calls) < 3:
                return httpx.Response(503)
            return httpx.Response(200, json=chat_payload("ok"))

        assert make_remote(handler).generate(BRAINSTORM).raw == "ok"
        assert len(calls) == 3

    def test_exhausted_retries(self):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(503)

        with pytest.raises(GeneratorUnavailable):
            make_remote(handler).generate(BRAINSTORM)
        assert len(calls) == 3

    def test_timeouts_exhaust_to_unavailable(self):
        def handler(request):
            raise httpx.ConnectTimeout("too slow")

        with pytest.raises(GeneratorUnavailable):
            make_remote(handler).generate(BRAINSTORM)

    def test_auth_failure_is_not_retried(self):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(401)

        with pytest.raises(AuthError):
            make_remote(handler, api_key="bad").generate(BRAINSTORM)
        assert len(calls) == 1

    def test_unexpected_status_fails_fast(self):
        def handler(request):
            return httpx.Response(404)

        with pytest.raises(GeneratorUnavailable):
            make_remote(handler).generate(BRAINSTORM)

    def test_malformed_payload(self):
        def handler(request):
            return httpx.Response(200, json={"unexpected": True})

        with pytest.raises(GeneratorUnavailable):
            make_remote(handler).generate(BRAINSTORM)
