/** Feature-detected adapters over the browser speech APIs.
 *
 * Everything is duck-typed against a caller-supplied environment object so
 * the widget can run (and be tested) without real browser globals; when a
 * capability is missing the adapter constructor returns null and the UI
 * hides that control.
 */

export interface RecognitionEvents {
  onFinal(transcript: string): void;
  onError(error: string): void;
  onEnd(): void;
}

interface RecognitionLike {
  lang: string;
  onresult: ((event: any) => void) | null;
  onerror: ((event: any) => void) | null;
  onend: (() => void) | null;
  start(): void;
  stop(): void;
}

export interface SpeechEnv {
  SpeechRecognition?: new () => RecognitionLike;
  webkitSpeechRecognition?: new () => RecognitionLike;
  SpeechSynthesisUtterance?: new (text: string) => any;
  speechSynthesis?: { speak(utterance: any): void; cancel(): void };
}

export class SpeechInput {
  private recognition: RecognitionLike;
  listening = false;

  private constructor(ctor: new () => RecognitionLike, private readonly events: RecognitionEvents) {
    this.recognition = new ctor();
    this.recognition.lang = "en";
    this.recognition.onresult = (event: any) => {
      const results = event?.results ?? [];
      const last = results[results.length - 1];
      if (last && last.isFinal) {
        this.events.onFinal(String(last[0]?.transcript ?? "").trim());
      }
    };
    this.recognition.onerror = (event: any) => {
      this.listening = false;
      this.events.onError(String(event?.error ?? "unknown"));
    };
    this.recognition.onend = () => {
      this.listening = false;
      this.events.onEnd();
    };
  }

  /** Null when the environment has no speech recognition. */
  static create(env: SpeechEnv, events: RecognitionEvents): SpeechInput | null {
    const ctor = env.SpeechRecognition ?? env.webkitSpeechRecognition;
    return ctor ? new SpeechInput(ctor, events) : null;
  }

  start(): void {
    if (this.listening) return;
    this.listening = true;
    this.recognition.start();
  }

  stop(): void {
    if (!this.listening) return;
    this.listening = false;
    this.recognition.stop();
  }
}

export class SpeechOutput {
  private constructor(
    private readonly utteranceCtor: new (text: string) => any,
    private readonly synthesis: { speak(utterance: any): void; cancel(): void },
  ) {}

  /** Null when the environment has no speech synthesis. */
  static create(env: SpeechEnv): SpeechOutput | null {
    if (!env.SpeechSynthesisUtterance || !env.speechSynthesis) return null;
    return new SpeechOutput(env.SpeechSynthesisUtterance, env.speechSynthesis);
  }

  /** Queue one sentence; queued utterances play in order. */
  speak(text: string): void {
    const utterance = new this.utteranceCtor(text);
    utterance.lang = "en";
    utterance.rate = 1;
    this.synthesis.speak(utterance);
  }

  cancel(): void {
    this.synthesis.cancel();
  }
}
