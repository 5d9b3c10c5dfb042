/** Entry point for the static bundle; resolves the service URL and mounts. */

import { mountApp } from "./app.js";
import { ServiceClient } from "./client.js";

export function resolveServiceUrl(loc: Pick<Location, "search">): string {
  const param = new URLSearchParams(loc.search).get("service");
  if (param) {
    return param.replace(/\/+$/, "");
  }
  const injected = (globalThis as { ITSKIT_SERVICE_URL?: string }).ITSKIT_SERVICE_URL;
  return injected?.replace(/\/+$/, "") ?? "";
}

const root = document.getElementById("app");
if (root) {
  mountApp(root, new ServiceClient(resolveServiceUrl(window.location)));
}
