import { ChatApiError, ChatClient, FetchLike } from "./api";
import { SpeechEnv, SpeechInput, SpeechOutput } from "./speech";
import { SessionStore, StorageLike } from "./storage";
import { ChatDirective, ChatSentence, DIRECTIVE_KINDS, HistoryEntry } from "./types";

/** Host-page facilities the widget touches; injectable for tests. */
export interface WidgetEnv extends SpeechEnv {
  document: Document;
  origin: string;
  localStorage: StorageLike | null;
  open(url: string): void;
  navigate(url: string): void;
}

export interface WidgetOptions {
  root: HTMLElement;
  env: WidgetEnv;
  endpoint?: string;
  fetchFn?: FetchLike;
}

export function browserEnv(win: Window): WidgetEnv {
  return {
    document: win.document,
    origin: win.location.origin,
    localStorage: (() => {
      try {
        return win.localStorage;
      } catch {
        return null;
      }
    })(),
    open: (url) => {
      win.open(url, "_blank", "noopener");
    },
    navigate: (url) => {
      win.location.assign(url);
    },
    SpeechRecognition: (win as any).SpeechRecognition,
    webkitSpeechRecognition: (win as any).webkitSpeechRecognition,
    SpeechSynthesisUtterance: (win as any).SpeechSynthesisUtterance,
    speechSynthesis: (win as any).speechSynthesis,
  };
}

export class ChatWidget {
  readonly history: HistoryEntry[] = [];
  sessionId: string | null = null;
  speakerOn = false;
  private pending = false;

  private readonly client: ChatClient;
  private readonly store: SessionStore;
  private readonly speechIn: SpeechInput | null;
  private readonly speechOut: SpeechOutput | null;

  private messages!: HTMLElement;
  private input!: HTMLInputElement;
  private sendButton!: HTMLButtonElement;
  private micButton: HTMLButtonElement | null = null;
  private speakerButton: HTMLButtonElement | null = null;
  private listeningNote!: HTMLElement;

  constructor(private readonly options: WidgetOptions) {
    const env = options.env;
    this.client = new ChatClient(options.endpoint ?? "", options.fetchFn);
    this.store = new SessionStore(env.origin, env.localStorage);
    this.sessionId = this.store.load();
    this.speechIn = SpeechInput.create(env, {
      onFinal: (transcript) => this.onRecognized(transcript),
      onError: (error) => this.onRecognitionError(error),
      onEnd: () => this.setListening(false),
    });
    this.speechOut = SpeechOutput.create(env);
    this.render();
  }

  // -- DOM ------------------------------------------------------------------

  private el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    className?: string,
    text?: string,
  ): HTMLElementTagNameMap[K] {
    const node = this.options.env.document.createElement(tag);
    if (className) node.className = className;
    if (text !== undefined) node.textContent = text;
    return node;
  }

  private render(): void {
    const root = this.options.root;
    root.classList.add("moocbot-widget");

    this.messages = this.el("div", "moocbot-messages");
    this.listeningNote = this.el("div", "moocbot-listening");
    this.listeningNote.hidden = true;
    this.listeningNote.textContent = "Listening…";

    const form = this.el("form", "moocbot-form");
    this.input = this.el("input", "moocbot-input");
    this.input.type = "text";
    this.input.placeholder = "Ask me something…";
    this.input.setAttribute("aria-label", "chat message");
    this.sendButton = this.el("button", "moocbot-send", "Send");
    this.sendButton.type = "submit";
    form.append(this.input, this.sendButton);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.sendMessage(this.input.value);
    });

    const controls = this.el("div", "moocbot-controls");
    if (this.speechIn) {
      this.micButton = this.el("button", "moocbot-mic", "🎤 Speak");
      this.micButton.type = "button";
      this.micButton.addEventListener("click", () => this.startListening());
      controls.append(this.micButton);
    }
    if (this.speechOut) {
      this.speakerButton = this.el("button", "moocbot-speaker", "🔇 Voice off");
      this.speakerButton.type = "button";
      this.speakerButton.addEventListener("click", () => this.toggleSpeaker());
      controls.append(this.speakerButton);
    }

    root.append(this.messages, this.listeningNote, form, controls);
  }

  private appendBubble(entry: HistoryEntry): HTMLElement {
    this.history.push(entry);
    const bubble = this.el("div", `moocbot-bubble moocbot-${entry.who}`);
    bubble.append(this.el("span", "moocbot-text", entry.text));
    this.messages.append(bubble);
    this.messages.scrollTop = this.messages.scrollHeight;
    return bubble;
  }

  // -- chat flow --------------------------------------------------------------

  /** Send one message; resolves when the reply (or error bubble) is rendered. */
  async sendMessage(text: string): Promise<void> {
    const message = text.trim();
    if (!message || this.pending) return;
    this.setPending(true);
    this.appendBubble({ who: "user", text: message });
    this.input.value = "";
    try {
      const reply = await this.client.send(message, this.sessionId);
      this.sessionId = reply.session_id;
      this.store.save(reply.session_id);
      for (const sentence of reply.sentences) {
        this.renderSentence(sentence);
      }
    } catch (error) {
      this.renderError(message, error);
    } finally {
      this.setPending(false);
    }
  }

  private renderSentence(sentence: ChatSentence): void {
    const bubble = this.appendBubble({ who: "bot", text: sentence.text, directive: sentence.directive });
    if (sentence.directive) {
      this.applyDirective(bubble, sentence.directive);
    }
    if (this.speakerOn && this.speechOut && sentence.text) {
      this.speechOut.speak(sentence.text);
    }
  }

  /** Only the three declared kinds act; anything else stays plain text. */
  private applyDirective(bubble: HTMLElement, directive: ChatDirective): void {
    if (!(DIRECTIVE_KINDS as readonly string[]).includes(directive.kind)) {
      if (directive.label) {
        bubble.append(" ", this.el("span", "moocbot-text", directive.label));
      }
      return;
    }
    if (directive.kind === "hyperlink") {
      const anchor = this.el("a", "moocbot-link", directive.label || directive.target);
      anchor.href = directive.target;
      anchor.target = "_blank";
      anchor.rel = "noopener";
      bubble.append(" ", anchor);
      return;
    }
    if (directive.kind === "open_window") {
      this.options.env.open(directive.target);
      return;
    }
    this.options.env.navigate(directive.target);
  }

  private renderError(message: string, error: unknown): void {
    const label = error instanceof ChatApiError ? error.message : "something went wrong";
    const bubble = this.appendBubble({ who: "status", text: `Could not send: ${label}` });
    const retry = this.el("button", "moocbot-retry", "Retry");
    retry.type = "button";
    retry.addEventListener("click", () => {
      bubble.remove();
      void this.sendMessage(message);
    });
    bubble.append(" ", retry);
  }

  private setPending(pending: boolean): void {
    this.pending = pending;
    this.input.disabled = pending;
    this.sendButton.disabled = pending;
  }

  // -- speech ------------------------------------------------------------------

  get micAvailable(): boolean {
    return this.speechIn !== null;
  }

  get voiceAvailable(): boolean {
    return this.speechOut !== null;
  }

  startListening(): void {
    if (!this.speechIn) return;
    this.setListening(true);
    this.speechIn.start();
  }

  /** A recognized utterance goes through exactly the typed-message path. */
  private onRecognized(transcript: string): void {
    this.setListening(false);
    if (!transcript) return;
    this.input.value = transcript;
    void this.sendMessage(transcript);
  }

  private onRecognitionError(error: string): void {
    this.setListening(false);
    const notice =
      error === "not-allowed" || error === "service-not-allowed"
        ? "Microphone permission was denied. Speech input needs microphone access; " +
          "on pages not served over HTTPS the browser asks again for every utterance."
        : `Speech recognition error: ${error}`;
    this.appendBubble({ who: "status", text: notice });
  }

  private setListening(listening: boolean): void {
    this.listeningNote.hidden = !listening;
    if (this.micButton) {
      this.micButton.classList.toggle("moocbot-listening-active", listening);
    }
  }

  toggleSpeaker(): void {
    this.speakerOn = !this.speakerOn;
    if (this.speakerButton) {
      this.speakerButton.textContent = this.speakerOn ? "🔊 Voice on" : "🔇 Voice off";
    }
    if (!this.speakerOn) {
      this.speechOut?.cancel();
    }
  }
}
