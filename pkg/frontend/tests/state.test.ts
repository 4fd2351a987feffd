import { describe, expect, it, vi } from 'vitest';

import { initialState, Store } from '../src/state';

describe('Store', () => {
  it('merges patches into the current state', () => {
    const store = new Store(initialState);
    store.set({ sessionId: 'abc', busy: true });
    expect(store.get().sessionId).toBe('abc');
    expect(store.get().busy).toBe(true);
    expect(store.get().prompts).toEqual([]);
  });

  it('notifies subscribers with the new state', () => {
    const store = new Store(initialState);
    const seen = vi.fn();
    store.subscribe(seen);
    store.set({ error: 'boom' });
    expect(seen).toHaveBeenCalledWith(expect.objectContaining({ error: 'boom' }));
  });

  it('unsubscribe stops notifications', () => {
    const store = new Store(initialState);
    const seen = vi.fn();
    const stop = store.subscribe(seen);
    stop();
    store.set({ busy: true });
    expect(seen).not.toHaveBeenCalled();
  });
});
