import { FetchLike } from "../src/api";
import { ChatReply } from "../src/types";
import { WidgetEnv } from "../src/widget";

export class MemoryStorage {
  private map = new Map<string, string>();
  getItem(key: string): string | null {
    return this.map.get(key) ?? null;
  }
  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
  removeItem(key: string): void {
    this.map.delete(key);
  }
}

export interface EnvLog {
  opened: string[];
  navigated: string[];
}

export function makeEnv(overrides: Partial<WidgetEnv> = {}): { env: WidgetEnv; log: EnvLog } {
  const log: EnvLog = { opened: [], navigated: [] };
  const env: WidgetEnv = {
    document,
    origin: "http://host.test",
    localStorage: new MemoryStorage(),
    open: (url) => log.opened.push(url),
    navigate: (url) => log.navigated.push(url),
    ...overrides,
  };
  return { env, log };
}

export interface FetchLog {
  bodies: string[];
  urls: string[];
}

export function stubFetch(
  reply: (body: string) => ChatReply | { status: number },
): { fetchFn: FetchLike; log: FetchLog } {
  const log: FetchLog = { bodies: [], urls: [] };
  const fetchFn: FetchLike = async (url, init) => {
    log.urls.push(url);
    const body = String(init.body);
    log.bodies.push(body);
    const result = reply(body);
    if ("status" in result && !("session_id" in result)) {
      return new Response("{}", { status: result.status });
    }
    return new Response(JSON.stringify(result), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, log };
}

export function okReply(sentences: ChatReply["sentences"], sessionId = "sess-1"): ChatReply {
  return { session_id: sessionId, sentences };
}

/** Scriptable stand-ins for the browser speech APIs. */
export class FakeRecognition {
  static instances: FakeRecognition[] = [];
  lang = "";
  started = 0;
  stopped = 0;
  onresult: ((event: any) => void) | null = null;
  onerror: ((event: any) => void) | null = null;
  onend: (() => void) | null = null;

  constructor() {
    FakeRecognition.instances.push(this);
  }

  start(): void {
    this.started += 1;
  }

  stop(): void {
    this.stopped += 1;
  }

  emitFinal(transcript: string): void {
    this.onresult?.({ results: [Object.assign([{ transcript }], { isFinal: true })] });
    this.onend?.();
  }

  emitError(error: string): void {
    this.onerror?.({ error });
  }
}

export class FakeUtterance {
  lang = "";
  rate = 0;
  constructor(readonly text: string) {}
}

export function fakeSynthesis() {
  const spoken: FakeUtterance[] = [];
  let cancels = 0;
  return {
    synthesis: {
      speak(utterance: FakeUtterance) {
        spoken.push(utterance);
      },
      cancel() {
        cancels += 1;
      },
    },
    spoken,
    cancelCount: () => cancels,
  };
}
