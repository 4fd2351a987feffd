import { createWizard } from './wizard';

function configuredBaseUrl(): string {
  const meta = document.querySelector('meta[name="fuzzydx-base-url"]');
  return meta?.getAttribute('content') ?? '';
}

function sessionFromFragment(): string | null {
  const match = /(?:^|[#&])s=([0-9a-f]+)/.exec(window.location.hash);
  return match ? match[1] : null;
}

const root = document.getElementById('app');
if (root) {
  const wizard = createWizard(root, {
    baseUrl: configuredBaseUrl(),
    onSession: (sessionId) => {
      // keep the session in the fragment so the page survives a refresh
      window.location.hash = sessionId ? `s=${sessionId}` : '';
    },
  });
  void wizard.start(sessionFromFragment());
}
