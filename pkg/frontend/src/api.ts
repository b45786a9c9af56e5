// Thin typed client for the session endpoints. The transport is injectable
// so unit tests can run against a fake and integration tests against fetch.

import type { Direction, GraphDto, MutateResponse, NodePayload, SessionState } from "./types.js";

export interface Transport {
  (method: string, path: string, body?: unknown): Promise<{ status: number; json: unknown }>;
}

export class ApiError extends Error {
  status: number;
  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

export function fetchTransport(baseUrl: string): Transport {
  return async (method, path, body) => {
    const res = await fetch(baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    let json: unknown = null;
    const text = await res.text();
    if (text) {
      try {
        json = JSON.parse(text);
      } catch {
        json = { detail: text };
      }
    }
    return { status: res.status, json };
  };
}

function expect(status: number, got: { status: number; json: unknown }): unknown {
  if (got.status !== status) {
    const detail =
      got.json && typeof got.json === "object" && "detail" in (got.json as object)
        ? String((got.json as { detail: unknown }).detail)
        : `status ${got.status}`;
    throw new ApiError(got.status, detail);
  }
  return got.json;
}

export class SessionApi {
  private t: Transport;
  constructor(transport: Transport) {
    this.t = transport;
  }

  async createSession(algebra: unknown): Promise<{ session_id: string; root: NodePayload }> {
    return expect(201, await this.t("POST", "/sessions", algebra)) as unknown as {
      session_id: string;
      root: NodePayload;
    };
  }

  async getState(sid: string): Promise<SessionState> {
    return expect(200, await this.t("GET", `/sessions/${sid}`)) as unknown as SessionState;
  }

  async mutate(sid: string, summandClass: string, direction: Direction): Promise<MutateResponse> {
    return expect(
      200,
      await this.t("POST", `/sessions/${sid}/mutate`, {
        summand_class: summandClass,
        direction,
      }),
    ) as unknown as MutateResponse;
  }

  async undo(sid: string): Promise<SessionState> {
    return expect(200, await this.t("POST", `/sessions/${sid}/undo`)) as unknown as SessionState;
  }

  async graph(sid: string, modShift: boolean): Promise<GraphDto> {
    const q = modShift ? "?mod_shift=true" : "";
    return expect(200, await this.t("GET", `/sessions/${sid}/graph${q}`)) as unknown as GraphDto;
  }

  async compare(sid: string, a: number, b: number): Promise<{ relation: string }> {
    return expect(200, await this.t("GET", `/sessions/${sid}/compare?a=${a}&b=${b}`)) as unknown as {
      relation: string;
    };
  }

  async remove(sid: string): Promise<void> {
    expect(204, await this.t("DELETE", `/sessions/${sid}`));
  }
}
