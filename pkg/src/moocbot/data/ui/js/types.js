/** Wire schema of the chat service. */
export const DIRECTIVE_KINDS = ["hyperlink", "open_window", "navigate"];
