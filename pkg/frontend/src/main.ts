/** Browser entry point: mounts the app against the lyric service.
 *
 * The service origin comes from `window.LYRICFIT_API_BASE` when set
 * (useful for serving the bundle from a different host) and falls back
 * to the page origin. `#<project-id>` in the URL re-opens an existing
 * project; otherwise a fresh one is created and its id written to the
 * hash so the page survives a refresh.
 */

import { ApiClient } from "./api";
import { App } from "./app";

declare global {
  interface Window {
    LYRICFIT_API_BASE?: string;
    lyricfitApp?: App;
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app mount point");
  }
  const base = window.LYRICFIT_API_BASE ?? window.location.origin;
  const app = new App(root, new ApiClient(base));
  window.lyricfitApp = app;
  const existing = window.location.hash.replace(/^#/, "");
  await app.init(existing || undefined);
  const project = app.state.project;
  if (project && !existing) {
    window.location.hash = project.id;
  }
}

void boot();
