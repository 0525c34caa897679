export class ChatApiError extends Error {
    constructor(message, status) {
        super(message);
        this.status = status;
        this.name = "ChatApiError";
    }
}
/** Thin client for POST /api/chat. */
export class ChatClient {
    constructor(baseUrl = "", fetchFn = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    /** The exact request body for a message; one place so every input channel
     * (typed or recognized speech) serializes identically. */
    buildBody(message, sessionId) {
        const request = { message };
        if (sessionId) {
            request.session_id = sessionId;
        }
        return JSON.stringify(request);
    }
    async send(message, sessionId) {
        let response;
        try {
            response = await this.fetchFn(`${this.baseUrl}/api/chat`, {
                method: "POST",
                headers: { "Content-Type": "application/json" },
                body: this.buildBody(message, sessionId),
            });
        }
        catch (error) {
            throw new ChatApiError(`network error: ${String(error)}`);
        }
        if (!response.ok) {
            throw new ChatApiError(`chat request failed (${response.status})`, response.status);
        }
        return (await response.json());
    }
}
