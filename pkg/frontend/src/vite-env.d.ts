/// <reference types="vite/client" />

interface ImportMetaEnv {
  readonly VITE_ACADAID_URL?: string;
}

interface ImportMeta {
  readonly env: ImportMetaEnv;
}
