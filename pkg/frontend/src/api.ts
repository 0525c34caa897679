import { ChatReply, ChatRequest } from "./types";

export class ChatApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ChatApiError";
  }
}

export type FetchLike = (input: string, init: RequestInit) => Promise<Response>;

/** Thin client for POST /api/chat. */
export class ChatClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  /** The exact request body for a message; one place so every input channel
   * (typed or recognized speech) serializes identically. */
  buildBody(message: string, sessionId: string | null): string {
    const request: ChatRequest = { message };
    if (sessionId) {
      request.session_id = sessionId;
    }
    return JSON.stringify(request);
  }

  async send(message: string, sessionId: string | null): Promise<ChatReply> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}/api/chat`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: this.buildBody(message, sessionId),
      });
    } catch (error) {
      throw new ChatApiError(`network error: ${String(error)}`);
    }
    if (!response.ok) {
      throw new ChatApiError(`chat request failed (${response.status})`, response.status);
    }
    return (await response.json()) as ChatReply;
  }
}
