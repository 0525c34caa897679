/** Session id persistence, keyed by host origin so one browser can hold
 * separate sessions for separately hosted bots. */

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export class SessionStore {
  private readonly key: string;

  constructor(origin: string, private readonly storage: StorageLike | null) {
    this.key = `moocbot.session.${origin}`;
  }

  load(): string | null {
    try {
      return this.storage ? this.storage.getItem(this.key) : null;
    } catch {
      return null;
    }
  }

  save(sessionId: string): void {
    try {
      this.storage?.setItem(this.key, sessionId);
    } catch {
      // storage may be unavailable (private mode); session stays in memory
    }
  }

  clear(): void {
    try {
      this.storage?.removeItem(this.key);
    } catch {
      // ignore
    }
  }
}
