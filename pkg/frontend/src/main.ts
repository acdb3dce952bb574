import { ApiClient } from "./api";
import { resolveApiBase } from "./config";
import { ScenarioStore } from "./store";
import { mount } from "./view";
import "./style.css";

const base = resolveApiBase([
  (globalThis as { GRATUITY_API_BASE?: unknown }).GRATUITY_API_BASE,
  import.meta.env.VITE_API_BASE,
]);

const store = new ScenarioStore({ client: new ApiClient(base) });
const root = document.querySelector<HTMLElement>("#app");
if (root) {
  mount(root, store);
  void store.recomputeNow();
}
