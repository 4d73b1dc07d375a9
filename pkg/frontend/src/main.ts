/** Entry point: read the bootstrap document, wire the controller to the DOM. */

import { ApiClient } from './api.js';
import { WorkspaceController } from './app.js';
import { DomView } from './dom.js';

interface Bootstrap {
  api_base_url: string;
}

async function start(): Promise<void> {
  let base = '/v1';
  try {
    const bootstrap = (await (await fetch('/config.json')).json()) as Bootstrap;
    base = bootstrap.api_base_url || base;
  } catch {
    // fall back to the default mount point
  }
  const api = new ApiClient(base);
  const view = new DomView();
  const controller = new WorkspaceController(api, view);
  view.bind(controller);

  const params = new URLSearchParams(window.location.search);
  let useCaseId = params.get('usecase');
  if (!useCaseId) {
    try {
      const { usecases } = await api.usecases();
      useCaseId = usecases[0]?.use_case_id ?? null;
    } catch {
      useCaseId = null;
    }
  }
  if (!useCaseId) {
    view.renderError('No use cases registered. Create one via the API, then reload.');
    return;
  }
  await controller.loadWorkspace(useCaseId);
}

void start();
