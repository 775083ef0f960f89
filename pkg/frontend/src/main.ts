import { Studio } from "./studio.js";

const root = document.getElementById("app");
if (root) {
  new Studio(root);
}
