/** Session id persistence, keyed by host origin so one browser can hold
 * separate sessions for separately hosted bots. */
export class SessionStore {
    constructor(origin, storage) {
        this.storage = storage;
        this.key = `moocbot.session.${origin}`;
    }
    load() {
        try {
            return this.storage ? this.storage.getItem(this.key) : null;
        }
        catch {
            return null;
        }
    }
    save(sessionId) {
        try {
            this.storage?.setItem(this.key, sessionId);
        }
        catch {
            // storage may be unavailable (private mode); session stays in memory
        }
    }
    clear() {
        try {
            this.storage?.removeItem(this.key);
        }
        catch {
            // ignore
        }
    }
}
