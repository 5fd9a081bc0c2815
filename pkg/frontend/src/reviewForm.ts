// Review submission: one label (normal or one of the four categories), the
// collected evidence, and the submit button. Deviant labels are blocked
// client-side until at least one frame or word is marked as evidence; the
// engine enforces the same rule server-side (422).

import { ApiClient, ApiError } from "./api.js";
import { clear, el } from "./dom.js";
import { Store } from "./state.js";
import type { Meta } from "./types.js";
import { NORMAL_LABEL } from "./types.js";

export class ReviewForm {
  readonly root: HTMLElement;
  private buttons = new Map<string, HTMLButtonElement>();
  private evidenceBox: HTMLElement;
  private message: HTMLElement;
  private submitButton: HTMLButtonElement;

  constructor(
    private store: Store,
    private meta: Meta,
    private api: ApiClient,
    private moderatorId: string,
    private onAccepted: () => void,
  ) {
    const labels = el("div", { class: "label-buttons" });
    for (const label of [NORMAL_LABEL, ...meta.categories]) {
      const button = el("button", { class: "label-button", "data-label": label }, label);
      button.style.borderColor = meta.palette[label] ?? "#666";
      button.addEventListener("click", () => this.store.setPendingLabel(label));
      this.buttons.set(label, button);
      labels.append(button);
    }
    this.evidenceBox = el("div", { class: "evidence-box" });
    this.message = el("div", { class: "form-message" });
    this.submitButton = el("button", { class: "submit-button" }, "submit review");
    this.submitButton.addEventListener("click", () => void this.submit());
    this.root = el(
      "div",
      { class: "review-form" },
      labels,
      this.evidenceBox,
      this.message,
      this.submitButton,
    );
    store.subscribe(() => this.sync());
    this.sync();
  }

  /** Client-side gate: deviant labels need at least one frame or word. */
  canSubmit(): boolean {
    const state = this.store.get();
    if (state.videoId === null || state.pendingLabel === null) return false;
    if (state.pendingLabel === NORMAL_LABEL) return true;
    return this.store.hasEvidence();
  }

  async submit(): Promise<void> {
    const state = this.store.get();
    if (state.videoId === null || state.pendingLabel === null) {
      this.showMessage("pick a label first");
      return;
    }
    if (!this.canSubmit()) {
      this.showMessage("deviant labels need evidence: mark at least one frame or word");
      return;
    }
    this.submitButton.disabled = true;
    try {
      const result = await this.api.submitReview(state.videoId, {
        label: state.pendingLabel,
        moderator_id: this.moderatorId,
        evidence: {
          frame_times: state.evidenceFrames,
          tags: state.evidenceTags,
          words: state.evidenceWords,
        },
      });
      this.showMessage(`accepted (${result.review_count} reviews total)`);
      this.onAccepted();
    } catch (error) {
      if (error instanceof ApiError) {
        this.showMessage(error.detail);
      } else {
        this.showMessage(String(error));
      }
    } finally {
      this.submitButton.disabled = false;
    }
  }

  private showMessage(text: string): void {
    this.message.textContent = text;
  }

  private sync(): void {
    const state = this.store.get();
    for (const [label, button] of this.buttons) {
      button.classList.toggle("active", state.pendingLabel === label);
    }
    clear(this.evidenceBox);
    const parts: string[] = [];
    if (state.evidenceFrames.length) parts.push(`${state.evidenceFrames.length} frame(s)`);
    if (state.evidenceWords.length) parts.push(`words: ${state.evidenceWords.join(", ")}`);
    if (state.evidenceTags.length) parts.push(`tags: ${state.evidenceTags.join(", ")}`);
    this.evidenceBox.textContent = parts.length ? `evidence: ${parts.join(" · ")}` : "no evidence marked";
  }
}
