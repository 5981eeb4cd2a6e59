/** Browser entry point: mount the app and resume any session in the hash. */

import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = new App(root, new ApiClient(""));
  void app.start(window.location.hash || null);
}
