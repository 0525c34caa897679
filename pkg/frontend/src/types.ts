/** Wire schema of the chat service. */

export const DIRECTIVE_KINDS = ["hyperlink", "open_window", "navigate"] as const;
export type DirectiveKind = (typeof DIRECTIVE_KINDS)[number];

export interface ChatDirective {
  kind: DirectiveKind | string;
  target: string;
  label: string;
}

export interface ChatSentence {
  text: string;
  directive?: ChatDirective;
}

export interface ChatRequest {
  session_id?: string;
  message: string;
}

export interface ChatReply {
  session_id: string;
  sentences: ChatSentence[];
}

export type Speaker = "user" | "bot" | "status";

export interface HistoryEntry {
  who: Speaker;
  text: string;
  directive?: ChatDirective;
}
