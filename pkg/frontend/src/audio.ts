/** Playback helpers.
 *
 * Real audio references play through an <audio> element. The stub
 * synthesizer's tokens have no audio behind them, so they fall back to a
 * WebAudio click track that sounds one tick per note, keeping playback
 * exercisable completely offline.
 */

export type Playback =
  | { kind: "clicks"; count: number }
  | { kind: "audio"; url: string };

export function playClickTrack(count: number, spacingMs = 220): Playback {
  const contexts = globalThis as {
    AudioContext?: new () => AudioContext;
    webkitAudioContext?: new () => AudioContext;
  };
  const Ctx = contexts.AudioContext ?? contexts.webkitAudioContext;
  if (Ctx) {
    const ctx = new Ctx();
    for (let i = 0; i < count; i++) {
      const osc = ctx.createOscillator();
      const gain = ctx.createGain();
      osc.frequency.value = 880;
      gain.gain.value = 0.15;
      osc.connect(gain);
      gain.connect(ctx.destination);
      const at = ctx.currentTime + (i * spacingMs) / 1000;
      osc.start(at);
      osc.stop(at + 0.06);
    }
  }
  return { kind: "clicks", count };
}

export function playAudioRef(ref: string, noteCount: number): Playback {
  if (ref.startsWith("stub-audio:")) {
    return playClickTrack(noteCount);
  }
  try {
    const element = new Audio(ref);
    const result = element.play();
    if (result && typeof result.catch === "function") {
      result.catch(() => undefined);
    }
  } catch {
    // environments without media support still report what would play
  }
  return { kind: "audio", url: ref };
}

export function describePlayback(playback: Playback): string {
  return playback.kind === "clicks"
    ? `click track (${playback.count} notes)`
    : `audio: ${playback.url}`;
}
