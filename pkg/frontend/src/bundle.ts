/** Task-bundle loading and version checks. */

import { BundleJson, SCHEMA_VERSION, TaskJson } from './types';

export class BundleVersionError extends Error {}

export function loadBundle(jsonText: string): BundleJson {
  const bundle = JSON.parse(jsonText) as BundleJson;
  if (bundle.schema_version !== SCHEMA_VERSION) {
    throw new BundleVersionError(
      `bundle schema ${bundle.schema_version} != supported ${SCHEMA_VERSION}`,
    );
  }
  if (!Array.isArray(bundle.tasks) || bundle.tasks.length === 0) {
    throw new BundleVersionError('bundle carries no tasks');
  }
  return bundle;
}

export function taskById(bundle: BundleJson, taskId: string): TaskJson {
  const task = bundle.tasks.find((t) => t.task_id === taskId);
  if (!task) throw new Error(`unknown task ${taskId}`);
  return task;
}
