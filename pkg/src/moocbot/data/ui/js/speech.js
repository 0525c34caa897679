/** Feature-detected adapters over the browser speech APIs.
 *
 * Everything is duck-typed against a caller-supplied environment object so
 * the widget can run (and be tested) without real browser globals; when a
 * capability is missing the adapter constructor returns null and the UI
 * hides that control.
 */
export class SpeechInput {
    constructor(ctor, events) {
        this.events = events;
        this.listening = false;
        this.recognition = new ctor();
        this.recognition.lang = "en";
        this.recognition.onresult = (event) => {
            const results = event?.results ?? [];
            const last = results[results.length - 1];
            if (last && last.isFinal) {
                this.events.onFinal(String(last[0]?.transcript ?? "").trim());
            }
        };
        this.recognition.onerror = (event) => {
            this.listening = false;
            this.events.onError(String(event?.error ?? "unknown"));
        };
        this.recognition.onend = () => {
            this.listening = false;
            this.events.onEnd();
        };
    }
    /** Null when the environment has no speech recognition. */
    static create(env, events) {
        const ctor = env.SpeechRecognition ?? env.webkitSpeechRecognition;
        return ctor ? new SpeechInput(ctor, events) : null;
    }
    start() {
        if (this.listening)
            return;
        this.listening = true;
        this.recognition.start();
    }
    stop() {
        if (!this.listening)
            return;
        this.listening = false;
        this.recognition.stop();
    }
}
export class SpeechOutput {
    constructor(utteranceCtor, synthesis) {
        this.utteranceCtor = utteranceCtor;
        this.synthesis = synthesis;
    }
    /** Null when the environment has no speech synthesis. */
    static create(env) {
        if (!env.SpeechSynthesisUtterance || !env.speechSynthesis)
            return null;
        return new SpeechOutput(env.SpeechSynthesisUtterance, env.speechSynthesis);
    }
    /** Queue one sentence; queued utterances play in order. */
    speak(text) {
        const utterance = new this.utteranceCtor(text);
        utterance.lang = "en";
        utterance.rate = 1;
        this.synthesis.speak(utterance);
    }
    cancel() {
        this.synthesis.cancel();
    }
}
