/** Application shell: queue + detail wiring against the review service. */

import { ReviewApi } from "./api.js";
import type { RecordDto } from "./types.js";
import { renderDetail, renderEmptyState, renderQueueRow } from "./view.js";
import { RecordViewModel } from "./viewmodel.js";

const PAGE_SIZE = 20;

interface QueueState {
  dataset: string;
  language: string;
  page: number;
  total: number;
}

class App {
  private readonly api = new ReviewApi();
  private readonly state: QueueState = { dataset: "", language: "", page: 1, total: 0 };
  private current: RecordViewModel | null = null;
  private reviewer = "reviewer";

  constructor(private readonly root: HTMLElement) {}

  async start(): Promise<void> {
    this.root.innerHTML = `
      <header>
        <h1>translation review</h1>
        <span id="reviewer-box">reviewer: <input id="reviewer" value="reviewer"></span>
      </header>
      <div id="toolbar">
        <label>dataset <input id="dataset-filter" placeholder="e.g. SCNM"></label>
        <label>language <input id="language-filter" placeholder="e.g. zh"></label>
        <button id="apply-filter">apply</button>
        <button id="prev">&lt;</button>
        <span id="page-indicator"></span>
        <button id="next">&gt;</button>
      </div>
      <div id="queue-box">
        <table id="queue">
          <thead><tr><th>id</th><th>dataset</th><th>pair</th><th>label</th><th>verdicts</th></tr></thead>
          <tbody></tbody>
        </table>
      </div>
      <div id="detail-box"></div>
      <div id="error-box"></div>`;
    this.byId<HTMLInputElement>("reviewer").addEventListener("input", (e) => {
      this.reviewer = (e.target as HTMLInputElement).value || "reviewer";
    });
    this.byId("apply-filter").addEventListener("click", () => {
      this.state.dataset = this.byId<HTMLInputElement>("dataset-filter").value.trim();
      this.state.language = this.byId<HTMLInputElement>("language-filter").value.trim();
      this.state.page = 1;
      void this.loadQueue();
    });
    this.byId("prev").addEventListener("click", () => this.turnPage(-1));
    this.byId("next").addEventListener("click", () => this.turnPage(1));
    await this.loadQueue();
  }

  private byId<T extends HTMLElement = HTMLElement>(id: string): T {
    return document.getElementById(id) as T;
  }

  private turnPage(delta: number): void {
    const pages = Math.max(1, Math.ceil(this.state.total / PAGE_SIZE));
    const next = Math.min(Math.max(1, this.state.page + delta), pages);
    if (next !== this.state.page) {
      this.state.page = next;
      void this.loadQueue();
    }
  }

  private showError(message: string): void {
    this.byId("error-box").replaceChildren(renderEmptyState(message));
  }

  private async loadQueue(): Promise<void> {
    try {
      const page = await this.api.listRecords({
        status: "pending",
        dataset: this.state.dataset || undefined,
        language: this.state.language || undefined,
        page: this.state.page,
        page_size: PAGE_SIZE,
      });
      this.state.total = page.total;
      const body = this.byId("queue").querySelector("tbody") as HTMLElement;
      body.replaceChildren();
      if (page.records.length === 0) {
        this.byId("detail-box").replaceChildren(
          renderEmptyState("no pending records"),
        );
      }
      for (const record of page.records) {
        body.appendChild(renderQueueRow(record, (id) => void this.open(id)));
      }
      const pages = Math.max(1, Math.ceil(page.total / PAGE_SIZE));
      this.byId("page-indicator").textContent =
        `page ${this.state.page}/${pages} (${page.total} pending)`;
      this.byId("error-box").replaceChildren();
    } catch (err) {
      this.showError(`service unreachable: ${String(err)}`);
    }
  }

  private async open(id: string): Promise<void> {
    try {
      const record = await this.api.getRecord(id);
      this.current = new RecordViewModel(record);
      this.renderDetail();
    } catch (err) {
      this.showError(String(err));
    }
  }

  private renderDetail(): void {
    const vm = this.current;
    if (!vm) return;
    this.byId("detail-box").replaceChildren(
      renderDetail(vm, {
        onSubmit: (action) => void this.submit(action),
        onRefresh: () => void this.open(vm.record.id),
      }),
    );
  }

  private async submit(action: "accept" | "edit" | "reject"): Promise<void> {
    const vm = this.current;
    if (!vm || !vm.canSubmit(action)) return;
    const result = await this.api.submitDecision(
      vm.record.id,
      vm.buildDecision(action, this.reviewer),
    );
    if (result.ok) {
      vm.applyDecision(result.record);
      this.current = null;
      this.byId("detail-box").replaceChildren(
        renderEmptyState(`${result.record.id}: ${result.record.status}`),
      );
      await this.loadQueue();
      return;
    }
    if (result.error.code === "revision-conflict") {
      const fresh = await this.api.getRecord(vm.record.id) as RecordDto;
      vm.applyConflict(fresh);
      this.renderDetail();
      return;
    }
    this.showError(`${result.error.code}: ${result.error.message}`);
  }
}

const container = document.getElementById("app");
if (container) {
  void new App(container).start();
}
