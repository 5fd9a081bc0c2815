import type {
  AudioLayoutData,
  Meta,
  QueueItem,
  ReviewResult,
  SceneLayoutData,
  VideoDetail,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export interface ReviewPayload {
  label: string;
  moderator_id: string;
  evidence: { frame_times: number[]; tags: string[]; words: string[] };
}

/** Thin typed client for the review service; the console computes nothing itself. */
export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) {
      throw new ApiError(response.status, await describeError(response));
    }
    return (await response.json()) as T;
  }

  meta(): Promise<Meta> {
    return this.getJson("/meta");
  }

  queue(threshold?: number): Promise<QueueItem[]> {
    const query = threshold === undefined ? "" : `?threshold=${threshold}`;
    return this.getJson(`/queue${query}`);
  }

  video(id: string): Promise<VideoDetail> {
    return this.getJson(`/videos/${id}`);
  }

  frames(id: string): Promise<SceneLayoutData> {
    return this.getJson(`/videos/${id}/frames`);
  }

  audio(id: string): Promise<AudioLayoutData> {
    return this.getJson(`/videos/${id}/audio`);
  }

  thumbUrl(id: string, frameIndex: number): string {
    return `${this.baseUrl}/videos/${id}/thumb/${frameIndex}`;
  }

  async submitReview(id: string, payload: ReviewPayload): Promise<ReviewResult> {
    const response = await fetch(`${this.baseUrl}/videos/${id}/review`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await describeError(response));
    }
    return (await response.json()) as ReviewResult;
  }

  async train(): Promise<{ version: number }> {
    const response = await fetch(`${this.baseUrl}/train`, { method: "POST" });
    if (!response.ok) {
      throw new ApiError(response.status, await describeError(response));
    }
    return (await response.json()) as { version: number };
  }
}

async function describeError(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (typeof body?.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return response.statusText;
  }
}
